use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fillgeo::braid::{left_normal_form, words_equal, BraidWord};
use fillgeo::catalog::{audit_catalog, bundled_catalog_dir, load_catalog, CatalogEntry, Claims, TableId};
use fillgeo::geography::{gates, predict, GateKind};
use fillgeo::lt::{bennequin_seifert, lt_value, RootOfUnity};
use fillgeo::moves::{load_certificate, verify_chain};
use fillgeo::reproduce::reproduce_table;
use fillgeo::batch;

const MISMATCH: u8 = 1;
const USAGE: u8 = 2;
const INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(name = "fillgeo", version, about = "Braid certificates, Levine-Tristram invariants and filling geography")]
struct Cli {
    /// Directory holding the catalog entry files.
    #[arg(long, global = true)]
    catalog_dir: Option<PathBuf>,
    /// Spread independent work over all cores.
    #[arg(long, global = true)]
    parallel: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Output {
    Text,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Gates {
    /// Gates valid for any nullity.
    #[value(name = "1")]
    General,
    /// Gates that need vanishing nullity.
    #[value(name = "2")]
    NullityFree,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Garside left normal form of a word.
    Nf {
        #[arg(long)]
        strands: usize,
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Exit 0 iff two words represent the same braid.
    Eq {
        #[arg(long)]
        strands: usize,
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Verify certificate files.
    Verify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Levine-Tristram signatures and nullities at the r-th roots of unity.
    Lt {
        #[arg(long)]
        strands: usize,
        #[arg(long)]
        order: u32,
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Gate values and the filling prediction for a quasipositive band product.
    Predict {
        #[arg(long)]
        strands: usize,
        #[arg(long)]
        order: u32,
        /// Gate family; defaults to the nullity-free one when the nullity sum vanishes.
        #[arg(long)]
        theorem: Option<Gates>,
        /// Report a failing nullity-free gate as a negative-definite caveat when possible.
        #[arg(long)]
        allow_caveat: bool,
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Recompute one of the filling tables from the catalog.
    Reproduce {
        #[arg(long, value_parser = parse_table)]
        theorem: TableId,
        #[arg(long, value_enum, default_value = "text")]
        output: Output,
    },
    /// Catalog maintenance.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Check the lemma claims against the catalog and its certificates.
    Audit,
}

fn parse_table(s: &str) -> Result<TableId, String> {
    TableId::parse(s).ok_or_else(|| format!("unknown theorem `{s}` (expected 1.3 to 1.8)"))
}

/// Error carrying the exit code to use.
struct Failure(u8, String);

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure(USAGE, e.to_string())
}

fn internal(e: impl std::fmt::Display) -> Failure {
    Failure(INTERNAL, e.to_string())
}

fn word(text: &str, strands: usize) -> Result<BraidWord, Failure> {
    BraidWord::parse(text, strands).map_err(usage)
}

fn catalog(cli: &Cli) -> Result<(PathBuf, Vec<CatalogEntry>), Failure> {
    let dir = cli.catalog_dir.clone().unwrap_or_else(bundled_catalog_dir);
    if !dir.is_dir() {
        return Err(usage(format!("catalog directory {} does not exist", dir.display())));
    }
    let entries = load_catalog(&dir).map_err(internal)?;
    Ok((dir, entries))
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    match &cli.command {
        Command::Nf { strands, word: w } => {
            let w = word(w, *strands)?;
            let nf = left_normal_form(&w);
            println!("delta power: {}", nf.delta_power);
            println!("factors: {}", nf.canonical_length());
            for f in &nf.factors {
                println!("  {f}");
            }
            println!("normal form: {nf}");
            Ok(true)
        }
        Command::Eq { strands, left, right } => {
            let equal = words_equal(&word(left, *strands)?, &word(right, *strands)?).map_err(usage)?;
            println!("{}", if equal { "equal" } else { "different" });
            Ok(equal)
        }
        Command::Verify { files } => {
            let results = batch::map(files, cli.parallel, |p| {
                load_certificate(p)
                    .map(|c| verify_chain(&c))
                    .map_err(|e| format!("{}: {e}", p.display()))
            });
            let mut all = true;
            for (p, r) in files.iter().zip(results) {
                match r {
                    Ok(rep) => {
                        all &= rep.accepted();
                        println!("{}: {rep}", p.display());
                    }
                    Err(e) => {
                        all = false;
                        println!("FAIL {e}");
                    }
                }
            }
            Ok(all)
        }
        Command::Lt { strands, order, word: w } => {
            if !(2..=4).contains(order) {
                return Err(usage("order must be 2, 3 or 4"));
            }
            let s = bennequin_seifert(&word(w, *strands)?);
            let (mut sig, mut eta) = (0, 0);
            for k in 1..*order {
                let omega = RootOfUnity::new(*order, k).map_err(usage)?;
                let v = lt_value(&s, omega);
                println!("zeta^{k}: sigma {} eta {}", v.sigma, v.eta);
                sig += v.sigma;
                eta += v.eta;
            }
            println!("sum: sigma {sig} eta {eta}");
            Ok(true)
        }
        Command::Predict {
            strands,
            order,
            theorem,
            allow_caveat,
            word: w,
        } => {
            let w = word(w, *strands)?;
            let (sig, eta) = fillgeo::lt::lt_sums(&bennequin_seifert(&w), *order).map_err(usage)?;
            let (n, m) = (*strands as i64, w.exponent_sum());
            let g = gates(*order, n, m, sig, eta).map_err(usage)?;
            println!("n {n} m {m} X {} H {} S {}", g.x, g.h, g.s);
            println!("T11: X+2H+S {}, X+2H-S {}", g.t11_a, g.t11_b);
            match (g.t12_a, g.t12_b) {
                (Some(a), Some(b)) => println!("T12: X+S {a}, X {b}"),
                _ => println!("T12: not applicable (H = {eta})"),
            }
            let kind = match theorem {
                Some(Gates::General) => GateKind::General,
                Some(Gates::NullityFree) => GateKind::NullityFree,
                None => g.natural_kind(),
            };
            match predict(*order, n, m, sig, eta, kind, *allow_caveat) {
                Ok(p) => {
                    print!("chi {} sigma {} b1 {} spin {}", p.chi, p.sigma, p.b1, p.spin);
                    if let Some(c) = p.caveat {
                        print!(" caveat {c}");
                    }
                    println!();
                    Ok(true)
                }
                Err(e) => {
                    println!("no prediction: {e}");
                    Ok(false)
                }
            }
        }
        Command::Reproduce { theorem, output } => {
            let (_, entries) = catalog(cli)?;
            let table = reproduce_table(&entries, *theorem, cli.parallel).map_err(internal)?;
            match output {
                Output::Text => print!("{}", table.to_text()),
                Output::Csv => print!("{}", table.to_csv().map_err(internal)?),
            }
            Ok(table.all_match() && !table.rows.is_empty())
        }
        Command::Catalog {
            action: CatalogAction::Audit,
        } => {
            let (dir, entries) = catalog(cli)?;
            let claims_path = dir.join("lemmas.claims");
            let claims = if claims_path.is_file() {
                Claims::load(&claims_path).map_err(internal)?
            } else {
                Claims::default()
            };
            let report = audit_catalog(&entries, &claims, cli.parallel);
            print!("{report}");
            Ok(report.passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(MISMATCH),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
