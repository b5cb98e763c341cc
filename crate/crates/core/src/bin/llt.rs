fn main() {
    std::process::exit(llt::cli::run(std::env::args_os()));
}
