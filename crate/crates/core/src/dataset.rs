//! On-disk dataset layout.
//!
//! ```text
//! root/
//!   <class label>/
//!     <instance id>.csv      # tab-separated, header = feature names
//! ```
//!
//! Class directories and instance files are both ordered lexicographically
//! by name. Every instance file must declare the same feature names in the
//! same order; series lengths may differ between instances.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::law::TimeSeries;

/// One instance file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceRef {
    pub class_label: String,
    /// File stem.
    pub instance_id: String,
    pub path: PathBuf,
}

/// Classes, instances and feature names of a dataset directory.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetIndex {
    pub root: PathBuf,
    pub classes: Vec<String>,
    /// `instances[c]` lists the instances of `classes[c]`, sorted by id.
    pub instances: Vec<Vec<InstanceRef>>,
    pub feature_names: Vec<String>,
}

impl DatasetIndex {
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn num_features(&self) -> usize {
        self.feature_names.len()
    }

    pub fn num_instances(&self) -> usize {
        self.instances.iter().map(Vec::len).sum()
    }

    pub fn class_index(&self, label: &str) -> Option<usize> {
        self.classes.iter().position(|c| c == label)
    }

    /// Position of `id` within class `class`.
    pub fn instance_index(&self, class: usize, id: &str) -> Option<usize> {
        self.instances[class]
            .binary_search_by(|r| r.instance_id.as_str().cmp(id))
            .ok()
    }
}

fn sorted_entries(dir: &Path, want_dirs: bool) -> Result<Vec<(String, PathBuf)>> {
    let mut out = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| Error::io(dir, e))? {
        let entry = entry.map_err(|e| Error::io(dir, e))?;
        let name = entry.file_name().to_string_lossy().into_owned();
        if name.starts_with('.') {
            continue;
        }
        let ty = entry.file_type().map_err(|e| Error::io(entry.path(), e))?;
        let ty_ok = if want_dirs { ty.is_dir() } else { ty.is_file() };
        if ty_ok {
            out.push((name, entry.path()));
        }
    }
    out.sort();
    Ok(out)
}

/// Indexes a dataset directory, checking that every instance file has the
/// same header.
pub fn scan_dataset(root: impl AsRef<Path>) -> Result<DatasetIndex> {
    let root = root.as_ref();
    let class_dirs = sorted_entries(root, true)?;
    if class_dirs.is_empty() {
        return Err(Error::EmptyDataset(format!(
            "no class directories under {}",
            root.display()
        )));
    }

    let mut classes = Vec::with_capacity(class_dirs.len());
    let mut instances = Vec::with_capacity(class_dirs.len());
    let mut feature_names: Option<Vec<String>> = None;

    for (label, dir) in class_dirs {
        let files = sorted_entries(&dir, false)?;
        if files.is_empty() {
            return Err(Error::EmptyDataset(format!(
                "class {label:?} has no instances"
            )));
        }
        let mut refs: Vec<InstanceRef> = Vec::with_capacity(files.len());
        for (name, path) in files {
            let id = Path::new(&name)
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or(name);
            let header = read_header(&path)?;
            match &feature_names {
                None => feature_names = Some(header),
                Some(expected) if *expected != header => {
                    return Err(Error::HeaderMismatch {
                        path,
                        expected: expected.clone(),
                        found: header,
                    })
                }
                Some(_) => {}
            }
            refs.push(InstanceRef {
                class_label: label.clone(),
                instance_id: id,
                path,
            });
        }
        // file names are sorted, but two extensions can share a stem
        refs.sort_by(|a, b| a.instance_id.cmp(&b.instance_id));
        if let Some(w) = refs.windows(2).find(|w| w[0].instance_id == w[1].instance_id) {
            return Err(Error::DuplicateInstance {
                class: label,
                id: w[0].instance_id.clone(),
            });
        }
        classes.push(label);
        instances.push(refs);
    }

    Ok(DatasetIndex {
        root: root.to_path_buf(),
        classes,
        instances,
        feature_names: feature_names.unwrap_or_default(),
    })
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn read_header(path: &Path) -> Result<Vec<String>> {
    let text = read_text(path)?;
    let first = text.lines().next().unwrap_or("");
    parse_header(path, first)
}

fn parse_header(path: &Path, line: &str) -> Result<Vec<String>> {
    let line = line.strip_suffix('\r').unwrap_or(line);
    if line.is_empty() {
        return Err(Error::parse(path, 1, "missing header"));
    }
    if line.contains(',') {
        return Err(Error::parse(path, 1, "instance files are tab-separated; found ','"));
    }
    let names: Vec<String> = line.split('\t').map(str::to_owned).collect();
    if names.iter().any(String::is_empty) {
        return Err(Error::parse(path, 1, "empty feature name"));
    }
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return Err(Error::parse(path, 1, format!("duplicate feature name {n:?}")));
        }
    }
    Ok(names)
}

/// Parses the text of an instance file into its header and one series per column.
pub fn parse_instance(path: &Path, text: &str) -> Result<(Vec<String>, Vec<TimeSeries>)> {
    let mut lines = text.split('\n');
    let header = parse_header(path, lines.next().unwrap_or(""))?;
    let width = header.len();
    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); width];

    let body: Vec<&str> = lines.collect();
    // a final newline leaves one empty trailing piece
    let body = match body.split_last() {
        Some((&"", rest)) => rest,
        _ => &body[..],
    };
    for (offset, raw) in body.iter().enumerate() {
        let line_no = offset + 2;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.is_empty() {
            return Err(Error::parse(path, line_no, "missing value (empty line)"));
        }
        if line.contains(',') {
            return Err(Error::parse(path, line_no, "instance files are tab-separated; found ','"));
        }
        let cells: Vec<&str> = line.split('\t').collect();
        if cells.len() != width {
            return Err(Error::parse(
                path,
                line_no,
                format!("expected {width} columns, found {}", cells.len()),
            ));
        }
        for (col, cell) in cells.iter().enumerate() {
            let cell = cell.trim();
            if cell.is_empty() {
                return Err(Error::parse(
                    path,
                    line_no,
                    format!("missing value in column {:?}", header[col]),
                ));
            }
            let x: f64 = cell.parse().map_err(|_| {
                Error::parse(path, line_no, format!("not a number: {cell:?}"))
            })?;
            if !x.is_finite() {
                return Err(Error::parse(path, line_no, format!("non-finite value {cell:?}")));
            }
            columns[col].push(x);
        }
    }

    let series = columns
        .into_iter()
        .map(|c| {
            TimeSeries::new(c).map_err(|e| Error::parse(path, 1, e.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((header, series))
}

/// Reads one instance file: one series per feature, in header order.
pub fn load_instance(instance: &InstanceRef) -> Result<Vec<TimeSeries>> {
    let text = read_text(&instance.path)?;
    Ok(parse_instance(&instance.path, &text)?.1)
}

/// Writes series as an instance file; values use the shortest round-trip
/// decimal form.
pub fn write_instance(
    path: impl AsRef<Path>,
    feature_names: &[String],
    series: &[TimeSeries],
) -> Result<()> {
    let path = path.as_ref();
    if feature_names.len() != series.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} feature names for {} series",
            feature_names.len(),
            series.len()
        )));
    }
    let len = series.first().map_or(0, TimeSeries::len);
    if series.iter().any(|s| s.len() != len) {
        return Err(Error::DimensionMismatch(
            "series within one instance must share a length".into(),
        ));
    }
    let mut out = feature_names.join("\t");
    out.push('\n');
    for t in 0..len {
        let row: Vec<String> = series.iter().map(|s| fmt_f64(s.values()[t])).collect();
        out.push_str(&row.join("\t"));
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

/// Shortest decimal string that parses back to exactly `x`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

/// A dataset held in memory: `series[class][instance][feature]` follows the
/// index ordering.
#[derive(Debug, Clone)]
pub struct Dataset {
    index: DatasetIndex,
    series: Vec<Vec<Vec<TimeSeries>>>,
}

/// Instances of one class, for building a [`Dataset`] in memory.
#[derive(Debug, Clone)]
pub struct ClassData {
    pub label: String,
    /// `(instance id, one series per feature)`
    pub instances: Vec<(String, Vec<TimeSeries>)>,
}

impl Dataset {
    /// Loads every instance listed in `index`.
    pub fn load(index: DatasetIndex) -> Result<Self> {
        let series = index
            .instances
            .iter()
            .map(|class| class.iter().map(load_instance).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Dataset { index, series })
    }

    pub fn open(root: impl AsRef<Path>) -> Result<Self> {
        Dataset::load(scan_dataset(root)?)
    }

    /// Builds a dataset without touching the file system. Classes and
    /// instances are sorted the same way a directory scan would sort them.
    pub fn from_classes(feature_names: Vec<String>, mut classes: Vec<ClassData>) -> Result<Self> {
        if classes.is_empty() {
            return Err(Error::EmptyDataset("no classes".into()));
        }
        classes.sort_by(|a, b| a.label.cmp(&b.label));
        if let Some(w) = classes.windows(2).find(|w| w[0].label == w[1].label) {
            return Err(Error::EmptyDataset(format!("duplicate class {:?}", w[0].label)));
        }
        let mut labels = Vec::new();
        let mut refs = Vec::new();
        let mut series = Vec::new();
        for mut class in classes {
            if class.instances.is_empty() {
                return Err(Error::EmptyDataset(format!(
                    "class {:?} has no instances",
                    class.label
                )));
            }
            class.instances.sort_by(|a, b| a.0.cmp(&b.0));
            let mut class_refs = Vec::new();
            let mut class_series = Vec::new();
            for (id, s) in class.instances {
                if s.len() != feature_names.len() {
                    return Err(Error::DimensionMismatch(format!(
                        "instance {id:?} has {} series, expected {}",
                        s.len(),
                        feature_names.len()
                    )));
                }
                if class_refs.last().is_some_and(|r: &InstanceRef| r.instance_id == id) {
                    return Err(Error::DuplicateInstance {
                        class: class.label.clone(),
                        id,
                    });
                }
                class_refs.push(InstanceRef {
                    class_label: class.label.clone(),
                    path: PathBuf::from(&class.label).join(format!("{id}.csv")),
                    instance_id: id,
                });
                class_series.push(s);
            }
            labels.push(class.label);
            refs.push(class_refs);
            series.push(class_series);
        }
        Ok(Dataset {
            index: DatasetIndex {
                root: PathBuf::new(),
                classes: labels,
                instances: refs,
                feature_names,
            },
            series,
        })
    }

    pub fn index(&self) -> &DatasetIndex {
        &self.index
    }

    /// Series of instance `instance` in class `class`, one per feature.
    pub fn series(&self, class: usize, instance: usize) -> &[TimeSeries] {
        &self.series[class][instance]
    }

    /// Looks an instance up by class label and id.
    pub fn find(&self, class_label: &str, instance_id: &str) -> Option<(usize, usize)> {
        let c = self.index.class_index(class_label)?;
        let i = self.index.instance_index(c, instance_id)?;
        Some((c, i))
    }

    /// Writes the dataset in directory form under `root` (which must be empty
    /// or absent) and returns the index of the written tree.
    pub fn write_to(&self, root: impl AsRef<Path>) -> Result<DatasetIndex> {
        let root = root.as_ref();
        ensure_empty_dir(root)?;
        for (c, label) in self.index.classes.iter().enumerate() {
            let dir = root.join(label);
            fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
            for (i, r) in self.index.instances[c].iter().enumerate() {
                write_instance(
                    dir.join(format!("{}.csv", r.instance_id)),
                    &self.index.feature_names,
                    &self.series[c][i],
                )?;
            }
        }
        scan_dataset(root)
    }
}

pub(crate) fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

/// Creates `dir` if needed; fails if it already holds anything.
pub(crate) fn ensure_empty_dir(dir: &Path) -> Result<()> {
    if dir.exists() {
        let mut entries = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
        if entries.next().is_some() {
            return Err(Error::OutputExists(dir.to_path_buf()));
        }
    }
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}
