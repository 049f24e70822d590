//! Bundled catalog of braid words, certificate references, expected filling
//! data and aggregate claims about hats and self-linking numbers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::batch;
use crate::braid::BraidWord;
use crate::geography::Caveat;
use crate::lt::surface_components;
use crate::moves::{infer_hats, load_certificate, verify_chain, CobordismChain, HatSpec, TargetStatus, VerificationReport};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("{file}:{line}: {message}")]
    Parse {
        file: String,
        line: usize,
        message: String,
    },
    #[error("{file}: missing `{key}`")]
    Missing { file: String, key: &'static str },
    #[error("duplicate entry `{name}` in {first} and {second}")]
    Duplicate {
        name: String,
        first: String,
        second: String,
    },
    #[error("{file}: chain file {chain} does not exist")]
    DanglingChain { file: String, chain: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// One of the six filling tables: knots or links, at cover order 2, 3 or 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TableId {
    Knots(u32),
    Links(u32),
}

impl TableId {
    pub const ALL: [TableId; 6] = [
        TableId::Knots(2),
        TableId::Knots(3),
        TableId::Knots(4),
        TableId::Links(2),
        TableId::Links(3),
        TableId::Links(4),
    ];

    /// Parses the labels `1.3` through `1.8`.
    pub fn parse(label: &str) -> Option<TableId> {
        Some(match label {
            "1.3" => TableId::Knots(2),
            "1.4" => TableId::Knots(3),
            "1.5" => TableId::Knots(4),
            "1.6" => TableId::Links(2),
            "1.7" => TableId::Links(3),
            "1.8" => TableId::Links(4),
            _ => return None,
        })
    }

    pub fn order(self) -> u32 {
        match self {
            TableId::Knots(r) | TableId::Links(r) => r,
        }
    }

    /// The hat needed for the K3 cap at this cover order.
    pub fn required_hat(self) -> HatSpec {
        match self.order() {
            2 => HatSpec::Projective { degree: 6 },
            3 => HatSpec::Hirzebruch { d1: 3, d2: 3 },
            _ => HatSpec::Projective { degree: 4 },
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self {
            TableId::Knots(r) => r + 1,
            TableId::Links(r) => r + 4,
        };
        write!(f, "1.{k}")
    }
}

/// Expected filling data for one table row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Expectation {
    pub chi: i64,
    pub sigma: i64,
    pub b1: Option<i64>,
    pub b2plus: Option<i64>,
    pub b2minus: Option<i64>,
    pub caveat: Option<Caveat>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub word: BraidWord,
    pub lemma: String,
    pub expected: BTreeMap<TableId, Expectation>,
    /// Absolute paths of the referenced certificates.
    pub chain_files: Vec<PathBuf>,
    pub source_file: PathBuf,
}

impl CatalogEntry {
    pub fn strands(&self) -> usize {
        self.word.strands()
    }

    /// `m`: for a quasipositive band product, the exponent sum.
    pub fn band_count(&self) -> i64 {
        self.word.exponent_sum()
    }

    pub fn self_linking(&self) -> i64 {
        self.band_count() - self.strands() as i64
    }

    pub fn is_link(&self) -> bool {
        self.word.closure_components() > 1
    }

    /// Verifies every referenced chain.
    pub fn verify_chains(&self) -> Vec<ChainCheck> {
        self.chain_files
            .iter()
            .map(|p| ChainCheck {
                path: p.clone(),
                outcome: load_certificate(p)
                    .map(|c| {
                        let r = verify_chain(&c);
                        (c, r)
                    })
                    .map_err(|e| e.to_string()),
            })
            .collect()
    }

    /// Hats inherited from the torus targets of the accepted chains.
    pub fn hats(&self) -> BTreeSet<HatSpec> {
        hats_from(&self.verify_chains())
    }
}

#[derive(Debug, Clone)]
pub struct ChainCheck {
    pub path: PathBuf,
    pub outcome: Result<(CobordismChain, VerificationReport), String>,
}

impl ChainCheck {
    pub fn accepted(&self) -> bool {
        matches!(&self.outcome, Ok((_, r)) if r.accepted())
    }
}

fn hats_from(checks: &[ChainCheck]) -> BTreeSet<HatSpec> {
    let mut out = BTreeSet::new();
    for c in checks {
        if let Ok((chain, r)) = &c.outcome {
            if r.accepted() && r.target == TargetStatus::Ok {
                if let Some((p, q)) = chain.target.torus() {
                    out.extend(infer_hats(p, q).unwrap_or_default());
                }
            }
        }
    }
    out
}

fn perr(file: &Path, line: usize, message: impl Into<String>) -> CatalogError {
    CatalogError::Parse {
        file: file.display().to_string(),
        line,
        message: message.into(),
    }
}

fn read(path: &Path) -> Result<String, CatalogError> {
    std::fs::read_to_string(path).map_err(|source| CatalogError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn parse_expect(file: &Path, ln: usize, rest: &str) -> Result<(TableId, Expectation), CatalogError> {
    let mut parts = rest.split_whitespace();
    let label = parts.next().ok_or_else(|| perr(file, ln, "expect needs a table label"))?;
    let table = TableId::parse(label).ok_or_else(|| perr(file, ln, format!("unknown table `{label}`")))?;
    let mut vals: BTreeMap<&str, &str> = BTreeMap::new();
    for kv in parts {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| perr(file, ln, format!("`{kv}` is not key=value")))?;
        if vals.insert(k, v).is_some() {
            return Err(perr(file, ln, format!("repeated key `{k}`")));
        }
    }
    let int = |k: &str| -> Result<Option<i64>, CatalogError> {
        vals.get(k)
            .map(|v| v.parse().map_err(|_| perr(file, ln, format!("{k}: `{v}` is not an integer"))))
            .transpose()
    };
    let caveat = match vals.get("caveat") {
        None => None,
        Some(&"negdef") => Some(Caveat::NegativeDefinite),
        Some(v) => return Err(perr(file, ln, format!("unknown caveat `{v}`"))),
    };
    for k in vals.keys() {
        if !["chi", "sigma", "b1", "b2p", "b2m", "caveat"].contains(k) {
            return Err(perr(file, ln, format!("unknown key `{k}`")));
        }
    }
    Ok((
        table,
        Expectation {
            chi: int("chi")?.ok_or_else(|| perr(file, ln, "missing chi"))?,
            sigma: int("sigma")?.ok_or_else(|| perr(file, ln, "missing sigma"))?,
            b1: int("b1")?,
            b2plus: int("b2p")?,
            b2minus: int("b2m")?,
            caveat,
        },
    ))
}

/// Parses one entry file. Chain paths are resolved against `base`.
pub fn parse_entry(text: &str, file: &Path, base: &Path) -> Result<CatalogEntry, CatalogError> {
    let mut name = None;
    let mut strands: Option<(usize, usize)> = None;
    let mut word: Option<(usize, String)> = None;
    let mut lemma = None;
    let mut expected = BTreeMap::new();
    let mut chains = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("expect ") {
            let (t, e) = parse_expect(file, ln, rest)?;
            if expected.insert(t, e).is_some() {
                return Err(perr(file, ln, format!("second expectation for {t}")));
            }
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| perr(file, ln, "expected `key = value`"))?;
        let v = v.trim();
        match k.trim() {
            "name" => name = Some(v.to_string()),
            "strands" => {
                let n = v.parse().map_err(|_| perr(file, ln, format!("`{v}` is not a strand count")))?;
                strands = Some((ln, n));
            }
            "word" => word = Some((ln, v.to_string())),
            "lemma" => lemma = Some(v.to_string()),
            "chain" => {
                let p = base.join(v);
                if !p.is_file() {
                    return Err(CatalogError::DanglingChain {
                        file: file.display().to_string(),
                        chain: v.to_string(),
                    });
                }
                chains.push(p);
            }
            other => return Err(perr(file, ln, format!("unknown key `{other}`"))),
        }
    }
    let missing = |key| CatalogError::Missing {
        file: file.display().to_string(),
        key,
    };
    let (_, n) = strands.ok_or_else(|| missing("strands"))?;
    let (wl, w) = word.ok_or_else(|| missing("word"))?;
    let word = BraidWord::parse(&w, n).map_err(|e| perr(file, wl, e.to_string()))?;
    Ok(CatalogEntry {
        name: name.ok_or_else(|| missing("name"))?,
        word,
        lemma: lemma.ok_or_else(|| missing("lemma"))?,
        expected,
        chain_files: chains,
        source_file: file.to_path_buf(),
    })
}

/// Loads every `*.entry` file in `dir`, sorted by name.
pub fn load_catalog(dir: impl AsRef<Path>) -> Result<Vec<CatalogEntry>, CatalogError> {
    let dir = dir.as_ref();
    let rd = std::fs::read_dir(dir).map_err(|source| CatalogError::Io {
        path: dir.display().to_string(),
        source,
    })?;
    let mut files = Vec::new();
    for e in rd {
        let e = e.map_err(|source| CatalogError::Io {
            path: dir.display().to_string(),
            source,
        })?;
        let p = e.path();
        if p.extension().is_some_and(|x| x == "entry") {
            files.push(p);
        }
    }
    files.sort();
    let mut out: Vec<CatalogEntry> = Vec::with_capacity(files.len());
    let mut seen: BTreeMap<String, PathBuf> = BTreeMap::new();
    for f in files {
        let entry = parse_entry(&read(&f)?, &f, dir)?;
        if let Some(first) = seen.insert(entry.name.clone(), f.clone()) {
            return Err(CatalogError::Duplicate {
                name: entry.name,
                first: first.display().to_string(),
                second: f.display().to_string(),
            });
        }
        out.push(entry);
    }
    out.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(out)
}

/// The bundled catalog directory.
pub fn bundled_catalog_dir() -> PathBuf {
    Path::new(crate::BUNDLED_DATA_DIR).join("catalog")
}

/// Aggregate claims the audit checks: one self-linking number per lemma,
/// and hat lists per lemma and hat kind.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Claims {
    pub self_linking: BTreeMap<String, i64>,
    pub hats: BTreeMap<(String, HatSpec), BTreeSet<String>>,
}

fn parse_hat(s: &str) -> Option<HatSpec> {
    let (kind, args) = s.strip_suffix(')')?.split_once('(')?;
    let nums: Vec<u32> = args.split(',').map(|x| x.trim().parse().ok()).collect::<Option<_>>()?;
    match (kind, nums.as_slice()) {
        ("projective", [d]) => Some(HatSpec::Projective { degree: *d }),
        ("hirzebruch", [a, b]) => Some(HatSpec::Hirzebruch { d1: *a, d2: *b }),
        _ => None,
    }
}

impl Claims {
    /// Lines `sl <lemma> <value>` and `hat <lemma> <hat> <name> <name> ...`.
    pub fn parse(text: &str, file: &Path) -> Result<Claims, CatalogError> {
        let mut c = Claims::default();
        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            match parts.as_slice() {
                ["sl", lemma, v] => {
                    let v = v.parse().map_err(|_| perr(file, ln, format!("`{v}` is not an integer")))?;
                    c.self_linking.insert(lemma.to_string(), v);
                }
                ["hat", lemma, hat, names @ ..] => {
                    let h = parse_hat(hat).ok_or_else(|| perr(file, ln, format!("unknown hat `{hat}`")))?;
                    c.hats
                        .entry((lemma.to_string(), h))
                        .or_default()
                        .extend(names.iter().map(|s| s.to_string()));
                }
                _ => return Err(perr(file, ln, "expected `sl ...` or `hat ...`")),
            }
        }
        Ok(c)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Claims, CatalogError> {
        let path = path.as_ref();
        Claims::parse(&read(path)?, path)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub check: &'static str,
    pub subject: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct AuditReport {
    pub findings: Vec<Finding>,
    pub chains_checked: usize,
    pub steps_checked: usize,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.findings.iter().all(|f| f.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| !f.ok)
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bad = self.failures().count();
        writeln!(
            f,
            "{} checks, {} failed; {} chains, {} steps verified",
            self.findings.len(),
            bad,
            self.chains_checked,
            self.steps_checked
        )?;
        for x in self.failures() {
            writeln!(f, "FAIL [{}] {}: {}", x.check, x.subject, x.detail)?;
        }
        Ok(())
    }
}

/// Checks the catalog against the claims: self-linking numbers per lemma,
/// chain verification, hat lists (exact for each hat kind a lemma
/// enumerates) and connectedness of the band surfaces of the table links.
pub fn audit_catalog(entries: &[CatalogEntry], claims: &Claims, parallel: bool) -> AuditReport {
    let checks = batch::map(entries, parallel, |e| e.verify_chains());
    let mut rep = AuditReport::default();
    let mut push = |check, subject: &str, ok, detail: String| {
        rep.findings.push(Finding {
            check,
            subject: subject.to_string(),
            ok,
            detail,
        })
    };
    let mut hats: BTreeMap<&str, BTreeSet<HatSpec>> = BTreeMap::new();
    let mut chains_checked = 0;
    let mut steps_checked = 0;
    for (e, cs) in entries.iter().zip(&checks) {
        if let Some(want) = claims.self_linking.get(&e.lemma) {
            let sl = e.self_linking();
            push("sl", &e.name, sl == *want, format!("e - n = {sl}, lemma claims {want}"));
        }
        for c in cs {
            chains_checked += 1;
            let file = c.path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            match &c.outcome {
                Ok((chain, r)) => {
                    steps_checked += r.steps.len();
                    push("chain", &e.name, r.accepted(), format!("{file}: {r}"));
                    let same = chain.source == e.word;
                    push("chain-source", &e.name, same, format!("{file} starts from the catalog word"));
                }
                Err(msg) => push("chain", &e.name, false, format!("{file}: {msg}")),
            }
        }
        if e.is_link() && e.expected.keys().any(|t| matches!(t, TableId::Links(_))) {
            let b0 = surface_components(&e.word);
            push("connected", &e.name, b0 == 1, format!("band surface has {b0} components"));
        }
        hats.insert(&e.name, hats_from(cs));
    }
    let by_name: BTreeMap<&str, &CatalogEntry> = entries.iter().map(|e| (e.name.as_str(), e)).collect();
    for ((lemma, hat), names) in &claims.hats {
        for n in names {
            let ok = hats.get(n.as_str()).is_some_and(|h| h.contains(hat));
            let detail = if by_name.contains_key(n.as_str()) {
                format!("lemma {lemma} lists {hat}")
            } else {
                "not in catalog".to_string()
            };
            push("hat", n, ok, detail);
        }
        for e in entries.iter().filter(|e| &e.lemma == lemma && !e.chain_files.is_empty()) {
            if hats[e.name.as_str()].contains(hat) && !names.contains(&e.name) {
                push("hat-extra", &e.name, false, format!("wears {hat} but lemma {lemma} does not list it"));
            }
        }
    }
    rep.chains_checked = chains_checked;
    rep.steps_checked = steps_checked;
    rep
}
