use std::fmt;
use std::path::Path;

use thiserror::Error;

use super::{ChainStep, ChainTarget, CobordismChain, StepKind, StrandEnd};
use crate::braid::BraidWord;

#[derive(Debug, Error)]
pub enum CertError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("missing header `{0}`")]
    MissingHeader(&'static str),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

fn perr(line: usize, message: impl Into<String>) -> CertError {
    CertError::Parse {
        line,
        message: message.into(),
    }
}

pub fn load_certificate(path: impl AsRef<Path>) -> Result<CobordismChain, CertError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| CertError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_certificate(&text)
}

fn word(line: usize, text: &str, strands: usize) -> Result<BraidWord, CertError> {
    BraidWord::parse(text, strands).map_err(|e| perr(line, e.to_string()))
}

fn int<T: std::str::FromStr>(line: usize, text: &str, what: &str) -> Result<T, CertError> {
    text.trim()
        .parse()
        .map_err(|_| perr(line, format!("{what}: `{}` is not a valid integer", text.trim())))
}

fn end_and_sign(line: usize, args: &[&str]) -> Result<(StrandEnd, i32), CertError> {
    let end = match args.first() {
        Some(&"top") => StrandEnd::Top,
        Some(&"bot") | Some(&"bottom") => StrandEnd::Bottom,
        _ => return Err(perr(line, "expected `top` or `bot`")),
    };
    let sign = match args.get(1) {
        None | Some(&"+") => 1,
        Some(&"-") => -1,
        Some(x) => return Err(perr(line, format!("unknown sign `{x}`"))),
    };
    if args.len() > 2 {
        return Err(perr(line, "too many arguments"));
    }
    Ok((end, sign))
}

pub fn parse_certificate(text: &str) -> Result<CobordismChain, CertError> {
    let mut name = None;
    let mut strands: Option<usize> = None;
    let mut source_text: Option<(usize, String)> = None;
    let mut sl = None;
    let mut target = None;
    let mut raw_steps: Vec<(usize, String, String)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some((op, expected)) = line.split_once("=>") {
            raw_steps.push((ln, op.trim().to_string(), expected.trim().to_string()));
            continue;
        }
        if !raw_steps.is_empty() {
            return Err(perr(ln, "header line after the first step"));
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| perr(ln, "expected `key = value` or `<op> => <word>`"))?;
        let value = value.trim();
        match key.trim() {
            "name" => name = Some(value.to_string()),
            "strands" => strands = Some(int(ln, value, "strands")?),
            "source" => source_text = Some((ln, value.to_string())),
            "sl" => sl = Some(int(ln, value, "sl")?),
            "target" => {
                let parts: Vec<&str> = value.split_whitespace().collect();
                target = Some(match parts.as_slice() {
                    ["torus", p, q] => ChainTarget::Torus {
                        p: int(ln, p, "p")?,
                        q: int(ln, q, "q")?,
                    },
                    ["braid", n, rest @ ..] => {
                        let n: usize = int(ln, n, "strands")?;
                        ChainTarget::Word(word(ln, &rest.join(" "), n)?)
                    }
                    _ => return Err(perr(ln, "target must be `torus <p> <q>` or `braid <n> <word>`")),
                });
            }
            other => return Err(perr(ln, format!("unknown header `{other}`"))),
        }
    }

    let name = name.ok_or(CertError::MissingHeader("name"))?;
    let strands = strands.ok_or(CertError::MissingHeader("strands"))?;
    let (sln, src) = source_text.ok_or(CertError::MissingHeader("source"))?;
    let source = word(sln, &src, strands)?;
    let target = target.ok_or(CertError::MissingHeader("target"))?;

    let mut n = strands;
    let mut steps = Vec::with_capacity(raw_steps.len());
    for (ln, op, expected) in raw_steps {
        let mut parts = op.split_whitespace();
        let head = parts.next().ok_or_else(|| perr(ln, "empty step"))?;
        let args: Vec<&str> = parts.collect();
        let kind = match head {
            "eq" if args.is_empty() => StepKind::Equal,
            "rot" if args.len() == 1 => StepKind::Rotate(int(ln, args[0], "rotation")?),
            "conj" => StepKind::Conjugate(word(ln, &args.join(" "), n)?),
            "destab" => {
                let (end, sign) = end_and_sign(ln, &args)?;
                StepKind::Destabilize { end, sign }
            }
            "stab" => {
                let (end, sign) = end_and_sign(ln, &args)?;
                StepKind::Stabilize { end, sign }
            }
            "insert" => {
                let joined = args.join("");
                let mut ins = Vec::new();
                for item in joined.split(',').filter(|s| !s.is_empty()) {
                    let (p, g) = item
                        .split_once(':')
                        .ok_or_else(|| perr(ln, format!("insertion `{item}` is not `pos:gen`")))?;
                    ins.push((int(ln, p, "position")?, int(ln, g, "generator")?));
                }
                if ins.is_empty() {
                    return Err(perr(ln, "insert needs at least one `pos:gen`"));
                }
                StepKind::InsertPositive(ins)
            }
            _ => return Err(perr(ln, format!("unknown or malformed step `{op}`"))),
        };
        n = kind.output_strands(n);
        let expected = word(ln, &expected, n)?;
        steps.push(ChainStep { kind, expected });
    }

    Ok(CobordismChain {
        name,
        source,
        steps,
        target,
        declared_sl: sl,
    })
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = |s: &i32| if *s > 0 { "+" } else { "-" };
        match self {
            StepKind::Equal => write!(f, "eq"),
            StepKind::Rotate(k) => write!(f, "rot {k}"),
            StepKind::Conjugate(c) => write!(f, "conj {}", c.to_text()),
            StepKind::Destabilize { end, sign: s } => write!(f, "destab {end} {}", sign(s)),
            StepKind::Stabilize { end, sign: s } => write!(f, "stab {end} {}", sign(s)),
            StepKind::InsertPositive(v) => {
                let items: Vec<String> = v.iter().map(|(p, g)| format!("{p}:{g}")).collect();
                write!(f, "insert {}", items.join(","))
            }
        }
    }
}

/// Writes the certificate text format read by [`parse_certificate`].
impl fmt::Display for CobordismChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "name = {}", self.name)?;
        writeln!(f, "strands = {}", self.strands())?;
        writeln!(f, "source = {}", self.source.to_text())?;
        if let Some(sl) = self.declared_sl {
            writeln!(f, "sl = {sl}")?;
        }
        match &self.target {
            ChainTarget::Torus { p, q } => writeln!(f, "target = torus {p} {q}")?,
            ChainTarget::Word(w) => writeln!(f, "target = braid {} {}", w.strands(), w.to_text())?,
        }
        for s in &self.steps {
            writeln!(f, "{} => {}", s.kind, s.expected.to_text())?;
        }
        Ok(())
    }
}
