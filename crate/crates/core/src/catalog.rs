//! Catalog of manifolds with their Floer-theoretic invariants, stored as JSON.
//!
//! ```json
//! { "schema_version": 1,
//!   "entries": [ { "name": "-Sigma(2,3,7)", "h": "0", "reduced_rank": 1,
//!                  "type": "I", "contact": null, "notes": "" } ] }
//! ```
//!
//! Rationals are strings (`"p/q"` or `"n"`) so they survive exactly.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::floer::{ContactClass, TowerName, TypeClass};
use crate::graded::Grading;
use crate::obstruct::{theorem_contact, theorem_main, FillingConstraint, ObstructError};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}:{line}:{column}: {message}")]
    Parse { path: PathBuf, line: usize, column: usize, message: String },
    #[error("{path}:{line}: entry {name:?}: {message}")]
    Invariant { path: PathBuf, line: usize, name: String, message: String },
    #[error("{path}: unsupported schema_version {found} (expected {SCHEMA_VERSION})")]
    Version { path: PathBuf, found: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
enum UnknownTag {
    #[serde(rename = "unknown")]
    Unknown,
}

/// Rank of the reduced monopole Floer group, when known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ReducedRank {
    Known(u32),
    #[serde(with = "unknown_tag")]
    Unknown,
}

mod unknown_tag {
    use super::UnknownTag;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(s: S) -> Result<S::Ok, S::Error> {
        UnknownTag::Unknown.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(), D::Error> {
        UnknownTag::deserialize(d).map(|_| ())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldEntry {
    pub name: String,
    pub h: Grading,
    pub reduced_rank: ReducedRank,
    #[serde(rename = "type")]
    pub type_class: Option<TypeClass>,
    pub contact: Option<ContactClass>,
    pub notes: String,
}

impl ManifoldEntry {
    /// Type I/II only make sense when the reduced group is `F`.
    pub fn check(&self) -> Result<(), String> {
        match (self.type_class, self.reduced_rank) {
            (Some(t), r) if r != ReducedRank::Known(1) => {
                Err(format!("type {t} requires reduced_rank 1, found {}", rank_text(r)))
            }
            _ => Ok(()),
        }
    }

    /// Runs the entry through the applicable constraint: the rank-one
    /// statement when the Type is known, else the contact-class statement.
    pub fn obstruction(&self) -> Result<FillingConstraint, ObstructError> {
        match (self.type_class, &self.contact) {
            (Some(t), _) => theorem_main(self.h, t),
            (None, Some(c)) => theorem_contact(c),
            (None, None) => Err(ObstructError::HypothesisNotMet("entry has neither a Type nor a contact class")),
        }
    }
}

fn rank_text(r: ReducedRank) -> String {
    match r {
        ReducedRank::Known(n) => n.to_string(),
        ReducedRank::Unknown => "unknown".into(),
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogFile {
    schema_version: u32,
    entries: Vec<ManifoldEntry>,
}

fn rank_one(name: &str, h: Grading, t: TypeClass, notes: &str) -> ManifoldEntry {
    ManifoldEntry {
        name: name.into(),
        h,
        reduced_rank: ReducedRank::Known(1),
        type_class: Some(t),
        contact: None,
        notes: notes.into(),
    }
}

/// The worked examples: Brieskorn spheres of reduced rank one, the `M(n)`
/// family, and `Y_{4k+1} = Σ(2, 8k+3, 16k+7)` with its contact structure.
pub fn builtin() -> Vec<ManifoldEntry> {
    let mut out = vec![
        rank_one("Sigma(2,3,11)", Grading::int(-1), TypeClass::II, "Brieskorn sphere"),
        rank_one("-Sigma(2,3,11)", Grading::int(1), TypeClass::I, "orientation reversal of Sigma(2,3,11)"),
        rank_one("-Sigma(2,3,7)", Grading::ZERO, TypeClass::I, "orientation reversal of Sigma(2,3,7)"),
    ];
    for n in (-9..=-1).rev() {
        out.push(rank_one(
            &format!("M({n})"),
            Grading::new(-(n + 1), 8),
            TypeClass::I,
            "h = -(n+1)/8",
        ));
    }
    for k in 1..=3i64 {
        let notes = if k == 1 {
            "Y_5; contact class at the bottom of the gamma-tower".to_string()
        } else {
            format!("Y_{}; reduced rank larger than 1; contact class at the bottom of the gamma-tower", 4 * k + 1)
        };
        out.push(ManifoldEntry {
            name: format!("Sigma(2,{},{})", 8 * k + 3, 16 * k + 7),
            h: Grading::ZERO,
            reduced_rank: ReducedRank::Unknown,
            type_class: None,
            contact: Some(ContactClass { d: Grading::ZERO, tower: Some(TowerName::Gamma), j_invariant: true }),
            notes,
        });
    }
    out
}

/// Name comparison tolerant of `Σ`/`Sigma`, `−`/`-` and spaces.
pub fn normalize_name(name: &str) -> String {
    name.replace('Σ', "Sigma").replace('−', "-").chars().filter(|c| !c.is_whitespace()).collect()
}

pub fn find<'a>(entries: &'a [ManifoldEntry], name: &str) -> Option<&'a ManifoldEntry> {
    let key = normalize_name(name);
    entries.iter().find(|e| normalize_name(&e.name) == key)
}

pub fn to_json_string(entries: &[ManifoldEntry]) -> String {
    let file = CatalogFile { schema_version: SCHEMA_VERSION, entries: entries.to_vec() };
    let mut s = serde_json::to_string_pretty(&file).expect("catalog serializes");
    s.push('\n');
    s
}

/// Parses catalog text; `path` is only used in diagnostics.
pub fn from_json_str(text: &str, path: &Path) -> Result<Vec<ManifoldEntry>, CatalogError> {
    let file: CatalogFile = serde_json::from_str(text).map_err(|e| CatalogError::Parse {
        path: path.into(),
        line: e.line(),
        column: e.column(),
        message: e.to_string().split(" at line ").next().unwrap_or_default().to_string(),
    })?;
    if file.schema_version != SCHEMA_VERSION {
        return Err(CatalogError::Version { path: path.into(), found: file.schema_version });
    }
    for (i, e) in file.entries.iter().enumerate() {
        if let Err(message) = e.check() {
            return Err(CatalogError::Invariant {
                path: path.into(),
                line: entry_line(text, i),
                name: e.name.clone(),
                message,
            });
        }
    }
    Ok(file.entries)
}

/// 1-based line of the `i`-th `"name"` key, as a pointer to the entry.
fn entry_line(text: &str, i: usize) -> usize {
    text.lines()
        .enumerate()
        .filter(|(_, l)| l.contains("\"name\""))
        .nth(i)
        .map_or(0, |(n, _)| n + 1)
}

pub fn load(path: &Path) -> Result<Vec<ManifoldEntry>, CatalogError> {
    let text = fs::read_to_string(path).map_err(|source| CatalogError::Io { path: path.into(), source })?;
    from_json_str(&text, path)
}

pub fn save(entries: &[ManifoldEntry], path: &Path) -> Result<(), CatalogError> {
    fs::write(path, to_json_string(entries)).map_err(|source| CatalogError::Io { path: path.into(), source })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::obstruct::Scope;

    fn parse(text: &str) -> Result<Vec<ManifoldEntry>, CatalogError> {
        from_json_str(text, Path::new("test.json"))
    }

    #[test]
    fn builtin_examples() {
        let all = builtin();
        assert_eq!(all.len(), 15);
        let e = find(&all, "-Sigma(2,3,7)").unwrap();
        assert_eq!((e.h, e.type_class), (Grading::ZERO, Some(TypeClass::I)));
        let e = find(&all, "M(-9)").unwrap();
        assert_eq!((e.h, e.type_class), (Grading::int(1), Some(TypeClass::I)));
        let e = find(&all, "Σ(2, 11, 23)").unwrap();
        let c = e.contact.unwrap();
        assert_eq!((c.d, c.tower, c.j_invariant), (Grading::ZERO, Some(TowerName::Gamma), true));
        assert_eq!(find(&all, "Sigma(2,3,11)").unwrap().h, Grading::int(-1));
        assert_eq!(find(&all, "−Σ(2,3,11)").unwrap().type_class, Some(TypeClass::I));
        assert!(find(&all, "Sigma(2,3,5)").is_none());
        for e in &all {
            e.check().unwrap();
        }
    }

    #[test]
    fn builtin_obstructions() {
        let all = builtin();
        let run = |n: &str| find(&all, n).unwrap().obstruction().unwrap();
        assert_eq!((run("-Sigma(2,3,7)").b2plus, run("-Sigma(2,3,7)").b2minus), (Some(1), Some(9)));
        assert_eq!(run("Sigma(2,3,11)").b2minus, Some(18));
        assert_eq!(run("-Sigma(2,3,11)").b2minus, Some(1));
        for n in -9..=-1i64 {
            let fc = run(&format!("M({n})"));
            assert_eq!((fc.b2plus, fc.b2minus), (Some(1), Some((10 + n) as u32)));
        }
        for k in 1..=3 {
            let fc = run(&format!("Sigma(2,{},{})", 8 * k + 3, 16 * k + 7));
            assert_eq!(fc.scope, Scope::IndefiniteFilling);
            assert_eq!((fc.b2plus, fc.b2minus), (Some(2), Some(10)));
        }
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("catalog.json");
        save(&builtin(), &path).unwrap();
        assert_eq!(load(&path).unwrap(), builtin());
        let first = fs::read_to_string(&path).unwrap();
        save(&load(&path).unwrap(), &path).unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), first);
    }

    const ONE: &str = r#"{
  "schema_version": 1,
  "entries": [
    {
      "name": "X",
      "h": "1/3",
      "reduced_rank": 1,
      "type": "I",
      "contact": null,
      "notes": ""
    }
  ]
}"#;

    #[test]
    fn rational_h_is_exact() {
        let e = parse(ONE).unwrap();
        assert_eq!(e[0].h, Grading::new(1, 3));
    }

    #[test]
    fn type_needs_rank_one() {
        let text = ONE.replace("\"reduced_rank\": 1", "\"reduced_rank\": 2");
        match parse(&text) {
            Err(CatalogError::Invariant { line, name, .. }) => assert_eq!((line, name.as_str()), (5, "X")),
            other => panic!("{other:?}"),
        }
        let text = ONE.replace("\"reduced_rank\": 1", "\"reduced_rank\": \"unknown\"");
        assert!(matches!(parse(&text), Err(CatalogError::Invariant { .. })));
        let text = text.replace("\"type\": \"I\"", "\"type\": null");
        assert_eq!(parse(&text).unwrap()[0].reduced_rank, ReducedRank::Unknown);
    }

    #[test]
    fn malformed_inputs_are_located() {
        let cases = [
            (ONE.replace("\"1/3\"", "\"1/0\""), 6),
            (ONE.replace("\"1/3\"", "\"0.5\""), 6),
            (ONE.replace("\"contact\": null", r#""contact": {"d": "0", "tower": "delta", "j_invariant": true}"#), 9),
            (ONE.replace("\"type\": \"I\"", "\"type\": \"III\""), 8),
            (ONE.replace("\"reduced_rank\": 1", "\"reduced_rank\": \"many\""), 7),
            (ONE.replace("\"notes\": \"\"", "\"notes\": \"\", \"extra\": 1"), 10),
        ];
        for (text, line) in cases {
            match parse(&text) {
                Err(CatalogError::Parse { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{other:?}"),
            }
        }
        let text = ONE.replace("\"schema_version\": 1", "\"schema_version\": 2");
        assert!(matches!(parse(&text), Err(CatalogError::Version { found: 2, .. })));
    }

    #[test]
    fn missing_file() {
        assert!(matches!(load(Path::new("/nonexistent/catalog.json")), Err(CatalogError::Io { .. })));
    }

    #[test]
    fn entry_without_type_or_contact() {
        let text = ONE.replace("\"type\": \"I\"", "\"type\": null");
        let e = &parse(&text).unwrap()[0];
        assert!(matches!(e.obstruction(), Err(ObstructError::HypothesisNotMet(_))));
    }
}
