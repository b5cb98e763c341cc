//! Seeded, class-balanced train/test splits and the plan file format.
//!
//! Plan file grammar (UTF-8, one `key=value` per line, lines starting with
//! `#` and blank lines ignored):
//!
//! ```text
//! llt-split-plan 1
//! test_ratio=0.3
//! seed=42
//! generator=<prng name>
//! class=<label>
//! train=<instance id>
//! test=<instance id>
//! class=<label>
//! ...
//! ```
//!
//! `test_ratio`, `seed` and `generator` are optional and may only appear
//! before the first `class=` line; hand-written plans usually omit them.
//! Each `class=` opens a section holding any number of `train=` and `test=`
//! lines. Values are taken verbatim after the first `=`.

use std::fmt::Write as _;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dataset::{fmt_f64, DatasetIndex};
use crate::error::{Error, Result};

pub const PLAN_MAGIC: &str = "llt-split-plan 1";

/// PRNG used by [`split`]; recorded in every generated plan.
pub const GENERATOR: &str = "chacha8-seed_from_u64/fisher-yates(rand-0.8)";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSplit {
    pub label: String,
    /// Training instance ids, sorted.
    pub train: Vec<String>,
    /// Test instance ids, sorted.
    pub test: Vec<String>,
}

/// Two-level split: per class, which instances train and which test.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitPlan {
    pub classes: Vec<ClassSplit>,
    pub test_ratio: Option<f64>,
    pub seed: Option<u64>,
    pub generator: Option<String>,
}

impl SplitPlan {
    /// Number of training instances.
    pub fn tau(&self) -> usize {
        self.classes.iter().map(|c| c.train.len()).sum()
    }

    pub fn num_test(&self) -> usize {
        self.classes.iter().map(|c| c.test.len()).sum()
    }

    pub fn class(&self, label: &str) -> Option<&ClassSplit> {
        self.classes.iter().find(|c| c.label == label)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(PLAN_MAGIC);
        out.push('\n');
        if let Some(r) = self.test_ratio {
            let _ = writeln!(out, "test_ratio={}", fmt_f64(r));
        }
        if let Some(s) = self.seed {
            let _ = writeln!(out, "seed={s}");
        }
        if let Some(g) = &self.generator {
            let _ = writeln!(out, "generator={g}");
        }
        for c in &self.classes {
            let _ = writeln!(out, "class={}", c.label);
            for id in &c.train {
                let _ = writeln!(out, "train={id}");
            }
            for id in &c.test {
                let _ = writeln!(out, "test={id}");
            }
        }
        out
    }

    pub fn from_text(path: &Path, text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, l)) if l.trim_end() == PLAN_MAGIC => {}
            _ => return Err(Error::parse(path, 1, format!("expected {PLAN_MAGIC:?}"))),
        }
        let mut plan = SplitPlan {
            classes: Vec::new(),
            test_ratio: None,
            seed: None,
            generator: None,
        };
        for (i, raw) in lines {
            let line_no = i + 1;
            let line = raw.strip_suffix('\r').unwrap_or(raw);
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(path, line_no, "expected key=value"))?;
            let in_class = !plan.classes.is_empty();
            match key {
                "test_ratio" if !in_class => {
                    let r = value
                        .parse()
                        .map_err(|_| Error::parse(path, line_no, "bad test_ratio"))?;
                    plan.test_ratio = Some(r);
                }
                "seed" if !in_class => {
                    let s = value
                        .parse()
                        .map_err(|_| Error::parse(path, line_no, "bad seed"))?;
                    plan.seed = Some(s);
                }
                "generator" if !in_class => plan.generator = Some(value.to_owned()),
                "class" => plan.classes.push(ClassSplit {
                    label: value.to_owned(),
                    train: Vec::new(),
                    test: Vec::new(),
                }),
                "train" | "test" => {
                    let class = plan
                        .classes
                        .last_mut()
                        .ok_or_else(|| Error::parse(path, line_no, "instance before class="))?;
                    let list = if key == "train" {
                        &mut class.train
                    } else {
                        &mut class.test
                    };
                    list.push(value.to_owned());
                }
                _ => {
                    return Err(Error::parse(
                        path,
                        line_no,
                        format!("unexpected key {key:?}"),
                    ))
                }
            }
        }
        Ok(plan)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        SplitPlan::from_text(path, &text)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }

    /// Checks the plan against `index` and returns it with classes in index
    /// order and ids sorted.
    ///
    /// Every class must be present once, its train and test lists must be
    /// disjoint, non-empty and together cover the class exactly. When the
    /// plan records a test ratio the per-class test counts must follow the
    /// rounding rule used by [`split`].
    pub fn validated(mut self, index: &DatasetIndex) -> Result<Self> {
        if self.classes.len() != index.num_classes() {
            return Err(Error::InvalidPlan(format!(
                "plan lists {} classes, dataset has {}",
                self.classes.len(),
                index.num_classes()
            )));
        }
        let mut ordered = Vec::with_capacity(self.classes.len());
        for (c, label) in index.classes.iter().enumerate() {
            let pos = self
                .classes
                .iter()
                .position(|s| &s.label == label)
                .ok_or_else(|| Error::InvalidPlan(format!("class {label:?} missing")))?;
            let mut cs = self.classes.swap_remove(pos);
            cs.train.sort();
            cs.test.sort();
            if cs.train.is_empty() || cs.test.is_empty() {
                return Err(Error::InvalidPlan(format!(
                    "class {label:?} needs at least one train and one test instance"
                )));
            }
            let mut all: Vec<&String> = cs.train.iter().chain(&cs.test).collect();
            all.sort();
            let expected: Vec<&String> = index.instances[c].iter().map(|r| &r.instance_id).collect();
            if all != expected {
                return Err(Error::InvalidPlan(format!(
                    "class {label:?}: train and test must partition its {} instances",
                    expected.len()
                )));
            }
            if let Some(r) = self.test_ratio {
                let want = test_count(expected.len(), r);
                if cs.test.len() != want {
                    return Err(Error::InvalidPlan(format!(
                        "class {label:?}: {} test instances, ratio {r} implies {want}",
                        cs.test.len()
                    )));
                }
            }
            ordered.push(cs);
        }
        self.classes = ordered;
        Ok(self)
    }
}

/// `clamp(round(n * ratio), 1, n - 1)`
pub fn test_count(n: usize, ratio: f64) -> usize {
    let raw = (n as f64 * ratio).round() as usize;
    raw.clamp(1, n.saturating_sub(1).max(1))
}

/// Splits each class independently: shuffle with a seeded PRNG, the first
/// `clamp(round(n_c * test_ratio), 1, n_c - 1)` instances go to test.
///
/// Without a seed one is drawn from entropy and recorded in the plan.
pub fn split(index: &DatasetIndex, test_ratio: f64, seed: Option<u64>) -> Result<SplitPlan> {
    if !(test_ratio > 0.0 && test_ratio < 1.0) {
        return Err(Error::InvalidRatio(test_ratio));
    }
    if index.num_classes() < 2 {
        return Err(Error::SplitInfeasible(format!(
            "need at least 2 classes, found {}",
            index.num_classes()
        )));
    }
    if let Some((c, _)) = index
        .instances
        .iter()
        .enumerate()
        .find(|(_, v)| v.len() < 2)
    {
        return Err(Error::SplitInfeasible(format!(
            "class {:?} has {} instance(s); at least 2 are needed",
            index.classes[c],
            index.instances[c].len()
        )));
    }

    let seed = seed.unwrap_or_else(rand::random);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let classes = index
        .classes
        .iter()
        .zip(&index.instances)
        .map(|(label, refs)| {
            let n = refs.len();
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            let n_test = test_count(n, test_ratio);
            let mut test: Vec<usize> = order[..n_test].to_vec();
            let mut train: Vec<usize> = order[n_test..].to_vec();
            test.sort_unstable();
            train.sort_unstable();
            let ids = |v: Vec<usize>| -> Vec<String> {
                v.into_iter().map(|i| refs[i].instance_id.clone()).collect()
            };
            ClassSplit {
                label: label.clone(),
                train: ids(train),
                test: ids(test),
            }
        })
        .collect();

    Ok(SplitPlan {
        classes,
        test_ratio: Some(test_ratio),
        seed: Some(seed),
        generator: Some(GENERATOR.to_owned()),
    })
}
