//! Job files: `[field]`, `[variety]` and `[task]` sections of `key = value` lines.

use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobError(pub String);

impl fmt::Display for JobError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for JobError {}

fn err<T>(msg: impl Into<String>) -> Result<T, JobError> {
    Err(JobError(msg.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarietyMode {
    /// Zero set of one form in P^N.
    Projective,
    /// Common zeros in A^N.
    Affine,
    /// P^N minus the zero set of one form.
    Complement,
    AffineSpace,
    GluedPlanes,
}

impl VarietyMode {
    fn parse(s: &str) -> Result<Self, JobError> {
        Ok(match s {
            "projective" => VarietyMode::Projective,
            "affine" => VarietyMode::Affine,
            "complement" => VarietyMode::Complement,
            "affine-space" => VarietyMode::AffineSpace,
            "glued-planes" => VarietyMode::GluedPlanes,
            _ => return err(format!("unknown variety mode '{s}'")),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TaskKind {
    Katz,
    CurveCongruence,
    R0,
    WeakLefschetz,
    EtaleRank,
    GroupCohomology,
    Cohomology,
    Count,
    Selftest,
}

impl TaskKind {
    fn parse(s: &str) -> Result<Self, JobError> {
        Ok(match s {
            "katz" => TaskKind::Katz,
            "curve-congruence" => TaskKind::CurveCongruence,
            "r0" => TaskKind::R0,
            "weak-lefschetz" => TaskKind::WeakLefschetz,
            "etale-rank" => TaskKind::EtaleRank,
            "group-cohomology" => TaskKind::GroupCohomology,
            "cohomology" => TaskKind::Cohomology,
            "count" => TaskKind::Count,
            "selftest" => TaskKind::Selftest,
            _ => return err(format!("unknown task '{s}'")),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variety {
    pub name: String,
    pub mode: VarietyMode,
    /// N for P^N or A^N.
    pub ambient: usize,
    pub equations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Task {
    pub kind: TaskKind,
    pub n: u32,
    pub r: u32,
    pub r_max: u32,
    pub m: u32,
    pub degree: Option<u32>,
    pub budget: Option<u128>,
    pub pole_bound: Option<i64>,
    pub cohen_macaulay: Option<bool>,
    pub suite: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobFile {
    pub p: u64,
    pub a: u32,
    pub variety: Option<Variety>,
    pub task: Task,
}

pub const VARS: [&str; 4] = ["x", "y", "z", "w"];

type Section = BTreeMap<String, Vec<(usize, String)>>;

fn take_one(sec: &Section, key: &str) -> Result<Option<(usize, String)>, JobError> {
    match sec.get(key).map(|v| v.as_slice()) {
        None | Some([]) => Ok(None),
        Some([one]) => Ok(Some(one.clone())),
        Some([_, (line, _), ..]) => err(format!("line {line}: duplicate key '{key}'")),
    }
}

fn num<T: std::str::FromStr>(sec: &Section, key: &str) -> Result<Option<T>, JobError> {
    match take_one(sec, key)? {
        None => Ok(None),
        Some((line, v)) => match v.parse() {
            Ok(x) => Ok(Some(x)),
            Err(_) => err(format!("line {line}: '{key}' expects a number, got '{v}'")),
        },
    }
}

fn check_keys(name: &str, sec: &Section, allowed: &[&str]) -> Result<(), JobError> {
    for (k, v) in sec {
        if !allowed.contains(&k.as_str()) {
            return err(format!("line {}: unknown key '{k}' in [{name}]", v[0].0));
        }
    }
    Ok(())
}

pub fn parse_job(text: &str) -> Result<JobFile, JobError> {
    let mut sections: BTreeMap<String, Section> = BTreeMap::new();
    let mut current: Option<String> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            let name = name.trim().to_string();
            if !["field", "variety", "task"].contains(&name.as_str()) {
                return err(format!("line {line_no}: unknown section [{name}]"));
            }
            if sections.contains_key(&name) {
                return err(format!("line {line_no}: duplicate section [{name}]"));
            }
            sections.insert(name.clone(), Section::new());
            current = Some(name);
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return err(format!("line {line_no}: expected 'key = value'"));
        };
        let Some(sec) = current.as_ref() else {
            return err(format!("line {line_no}: key outside of a section"));
        };
        sections
            .get_mut(sec)
            .unwrap()
            .entry(k.trim().to_string())
            .or_default()
            .push((line_no, v.trim().to_string()));
    }

    let empty = Section::new();
    let task_sec = sections.get("task").ok_or_else(|| JobError("missing [task] section".into()))?;
    check_keys(
        "task",
        task_sec,
        &["kind", "n", "r", "r_max", "m", "degree", "budget", "pole_bound", "cohen_macaulay", "suite"],
    )?;
    let kind = match take_one(task_sec, "kind")? {
        Some((_, k)) => TaskKind::parse(&k)?,
        None => return err("[task] needs 'kind'"),
    };
    let cohen_macaulay = match take_one(task_sec, "cohen_macaulay")? {
        None => None,
        Some((_, v)) if v == "true" => Some(true),
        Some((_, v)) if v == "false" => Some(false),
        Some((line, v)) => return err(format!("line {line}: 'cohen_macaulay' expects true or false, got '{v}'")),
    };
    let task = Task {
        kind,
        n: num(task_sec, "n")?.unwrap_or(1),
        r: num(task_sec, "r")?.unwrap_or(1),
        r_max: num(task_sec, "r_max")?.unwrap_or(4),
        m: num(task_sec, "m")?.unwrap_or(1),
        degree: num(task_sec, "degree")?,
        budget: num(task_sec, "budget")?,
        pole_bound: num(task_sec, "pole_bound")?,
        cohen_macaulay,
        suite: take_one(task_sec, "suite")?.map(|x| x.1),
    };
    let n_min = if kind == TaskKind::R0 { 0 } else { 1 };
    if task.n < n_min || task.n > 8 || task.r == 0 || task.r > 12 || task.r_max == 0 || task.r_max > 12 || task.m > 16 {
        return err("task parameters out of range (n <= 8, 1 <= r, r_max <= 12, m <= 16)");
    }

    let field_sec = sections.get("field");
    if field_sec.is_none() && kind != TaskKind::Selftest {
        return err("missing [field] section");
    }
    let field_sec = field_sec.unwrap_or(&empty);
    check_keys("field", field_sec, &["p", "a"])?;
    let p = num(field_sec, "p")?.unwrap_or(2);
    let a = num(field_sec, "a")?.unwrap_or(1);

    let variety = match sections.get("variety") {
        None => None,
        Some(sec) => {
            check_keys("variety", sec, &["name", "mode", "ambient", "equation"])?;
            let mode = match take_one(sec, "mode")? {
                Some((_, m)) => VarietyMode::parse(&m)?,
                None => VarietyMode::Projective,
            };
            let ambient: usize = num(sec, "ambient")?.unwrap_or(2);
            if ambient == 0 || ambient >= VARS.len() {
                return err(format!("ambient dimension {ambient} is outside 1..=3"));
            }
            let equations: Vec<String> =
                sec.get("equation").map(|v| v.iter().map(|x| x.1.clone()).collect()).unwrap_or_default();
            let name = take_one(sec, "name")?.map(|x| x.1).unwrap_or_else(|| equations.join("; "));
            Some(Variety { name, mode, ambient, equations })
        }
    };
    let needs_variety = !matches!(kind, TaskKind::GroupCohomology | TaskKind::Selftest);
    if needs_variety && variety.is_none() {
        return err("missing [variety] section");
    }
    Ok(JobFile { p, a, variety, task })
}
