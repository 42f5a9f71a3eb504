//! Command-line surface over the library. Every computation lives in the
//! library; this binary only parses arguments, wires files to category
//! pairs, and prints tables.
//!
//! Exit codes: 0 success, 1 validation failure, 2 I/O or parse failure,
//! 3 internal convention violation.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ainfty::bar;
use ainfty::cat::AInftyCategory;
use ainfty::curved::CurvedCategory;
use ainfty::cyclic;
use ainfty::error::{BuildError, CatError, FormatError};
use ainfty::format::{parse_category, serialize_category};
use ainfty::hochschild;
use ainfty::models;
use ainfty::report::BettiReport;
use ainfty::scalar::Field;

#[derive(Parser)]
#[command(
    name = "ainfty",
    version,
    about = "Exact Betti tables of truncated Hochschild, cyclic, Donaldson and bar complexes for finite A-infinity categories"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run all validators on a category file; nonzero exit on failure
    Validate {
        file: PathBuf,
    },
    /// Betti rows of the truncated cyclic bar complexes, p = 0..=pmax
    Hochschild {
        file: PathBuf,
        #[arg(long)]
        pmax: u32,
        /// Q or a prime p, overriding the field declared in the file
        #[arg(long)]
        field: Option<String>,
        /// also write the table as CSV (p,degree,dim)
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// E1 page of the weight spectral sequence with d1 ranks and E2
    E1 {
        file: PathBuf,
        #[arg(long)]
        pmax: u32,
        #[arg(long)]
        field: Option<String>,
    },
    /// Betti numbers of the Donaldson complex
    Donaldson {
        file: PathBuf,
        /// fibre dimension: shifts the complex by d + 2
        #[arg(long)]
        d: i64,
        #[arg(long)]
        field: Option<String>,
    },
    /// Betti rows of the truncated bar complexes
    Bar {
        file: PathBuf,
        #[arg(long)]
        pmax: u32,
        #[arg(long)]
        field: Option<String>,
        /// verify that the insertion cone inside B*/F^2 is acyclic
        #[arg(long)]
        check_insert_a: bool,
        /// compare B*/F^2 homology with the one-module-letter quotient
        #[arg(long)]
        check_serre_step: bool,
    },
    /// Coinvariant (Connes) complex Betti rows per t-weight
    Connes {
        file: PathBuf,
        #[arg(long)]
        pmax: u32,
        #[arg(long)]
        field: Option<String>,
    },
    /// Emit a bundled example category as a file
    Gen {
        /// empty | am-quiver | branched-cover | two-spheres
        name: String,
        /// number of vanishing cycles, where applicable
        #[arg(long)]
        m: Option<usize>,
        /// fibre dimension, where applicable
        #[arg(long)]
        d: Option<i64>,
        #[arg(long)]
        field: Option<String>,
        #[arg(short, long)]
        output: PathBuf,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new(2, format!("i/o: {e}"))
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Validation(inner) => Failure::new(1, format!("validation: {inner}")),
            other => Failure::new(2, format!("parse: {other}")),
        }
    }
}

impl From<CatError> for Failure {
    fn from(e: CatError) -> Self {
        Failure::new(1, format!("validation: {e}"))
    }
}

impl From<BuildError> for Failure {
    fn from(e: BuildError) -> Self {
        match e {
            BuildError::Cat(inner) => Failure::new(1, format!("validation: {inner}")),
            other => Failure::new(3, format!("convention: {other}")),
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("ainfty: error[E{}]: {}", f.code, f.message);
            ExitCode::from(f.code)
        }
    }
}

fn parse_field_arg(arg: &Option<String>) -> Result<Option<Field>, Failure> {
    let Some(s) = arg else { return Ok(None) };
    let field = match s.as_str() {
        "Q" | "q" => Field::Rationals,
        t => {
            let digits = t.strip_prefix(['F', 'f']).unwrap_or(t);
            let p: u64 = digits
                .parse()
                .map_err(|_| Failure::new(2, format!("cannot parse field `{t}`")))?;
            Field::Prime(p)
        }
    };
    field.validate().map_err(|e| Failure::new(2, e.to_string()))?;
    Ok(Some(field))
}

fn load(file: &PathBuf, field: &Option<String>) -> Result<(AInftyCategory, String), Failure> {
    let text = std::fs::read_to_string(file)?;
    let cat = parse_category(&text, parse_field_arg(field)?)?;
    Ok((cat, text))
}

fn curved_from(cat: &AInftyCategory, pmax: u32) -> Result<CurvedCategory, Failure> {
    Ok(CurvedCategory::from_ambient(cat.clone(), pmax)?)
}

fn negate_keys(m: BTreeMap<i64, usize>) -> BTreeMap<i64, usize> {
    m.into_iter().map(|(k, v)| (-k, v)).collect()
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Validate { file } => {
            let (cat, _) = load(&file, &None)?;
            // parse_category already validated; build the directed pair too
            let cc = curved_from(&cat, 0)?;
            println!(
                "ok: {} objects, {} generators over {}, directed part has {} generators",
                cat.object_count(),
                cat.gen_count(),
                cat.field(),
                cc.directed().gen_count(),
            );
            Ok(())
        }
        Cmd::Hochschild { file, pmax, field, csv } => {
            let (cat, text) = load(&file, &field)?;
            let cc = curved_from(&cat, pmax)?;
            let rows = hochschild::betti_rows(&cc, pmax)?;
            let mut report = BettiReport::new(cat.field(), &text);
            for (p, row) in rows {
                report.push_row(p, row);
            }
            print!("{}", report.metadata_lines());
            print!("{}", report.render_table("p"));
            let sizes: Vec<String> = (0..=pmax)
                .map(|p| format!("p = {p}: {}", cc.cyclic_words(p, None).len()))
                .collect();
            println!("chain generators per truncation level: {}", sizes.join(", "));
            if let Some(path) = csv {
                std::fs::write(&path, report.to_csv())?;
                println!("csv written to {}", path.display());
            }
            Ok(())
        }
        Cmd::E1 { file, pmax, field } => {
            let (cat, text) = load(&file, &field)?;
            let cc = curved_from(&cat, pmax)?;
            let page = hochschild::e1_page(&cc, pmax)?;
            let mut dims = BettiReport::new(cat.field(), &text);
            for (w, col) in page.columns.iter().enumerate() {
                dims.push_row(w as u32, negate_keys(col.clone()));
            }
            print!("{}", dims.metadata_lines());
            println!("E1 dimensions per weight column:");
            print!("{}", dims.render_table("w"));
            println!("d1 ranks, from (weight w, homological degree k) to (w+1, k-1):");
            let mut ranks = BettiReport::new(cat.field(), &text);
            for (w, r) in page.d1_ranks.iter().enumerate() {
                ranks.push_row(w as u32, negate_keys(r.clone()));
            }
            print!("{}", ranks.render_table("w"));
            println!("E2 dimensions (weights with both adjacent d1 maps computed):");
            let mut e2 = BettiReport::new(cat.field(), &text);
            for (w, r) in page.e2.iter().enumerate() {
                e2.push_row(w as u32, negate_keys(r.clone()));
            }
            print!("{}", e2.render_table("w"));
            Ok(())
        }
        Cmd::Donaldson { file, d, field } => {
            let (cat, text) = load(&file, &field)?;
            let cc = curved_from(&cat, 1)?;
            let betti = cyclic::donaldson_betti(&cc, d)?;
            let mut report = BettiReport::new(cat.field(), &text);
            report.push_row(0, betti);
            print!("{}", report.metadata_lines());
            println!("Donaldson complex Betti numbers (fibre dimension {d}):");
            print!("{}", report.render_table("row"));
            Ok(())
        }
        Cmd::Bar { file, pmax, field, check_insert_a, check_serre_step } => {
            let (cat, text) = load(&file, &field)?;
            let cc = curved_from(&cat, pmax.max(1))?;
            let mut report = BettiReport::new(cat.field(), &text);
            for p in 0..=pmax {
                report.push_row(p, bar::bar_betti(&cc, p)?);
            }
            print!("{}", report.metadata_lines());
            print!("{}", report.render_table("p"));
            if check_insert_a {
                let r = bar::insert_a_check(&cc)?;
                if r.acyclic() {
                    println!("insert-a cone: acyclic");
                } else {
                    let nonzero: BTreeMap<i64, usize> =
                        r.homology.into_iter().filter(|(_, d)| *d > 0).collect();
                    return Err(Failure::new(
                        1,
                        format!("insert-a cone is not acyclic: homology {nonzero:?}"),
                    ));
                }
            }
            if check_serre_step {
                let r = bar::serre_step_report(&cc)?;
                if r.matches() {
                    println!("serre step: B*/F^2 homology matches the one-module-letter quotient");
                } else {
                    return Err(Failure::new(
                        1,
                        format!(
                            "serre step mismatch: bar {:?} vs step {:?}",
                            r.bar_homology, r.step_homology
                        ),
                    ));
                }
            }
            Ok(())
        }
        Cmd::Connes { file, pmax, field } => {
            let (cat, text) = load(&file, &field)?;
            let cc = curved_from(&cat, pmax)?;
            let connes = cyclic::connes_complex(&cc, pmax)?;
            let mut report = BettiReport::new(cat.field(), &text);
            if let Field::Prime(p) = cat.field() {
                report.warnings.push(format!(
                    "coefficients have characteristic {p}; the identification of these \
                     coinvariants with cyclic homology is only asserted in characteristic 0"
                ));
            }
            for (w, row) in connes.betti()? {
                report.push_row(w, row);
            }
            print!("{}", report.metadata_lines());
            print!("{}", report.render_table("weight"));
            Ok(())
        }
        Cmd::Gen { name, m, d, field, output } => {
            let field = parse_field_arg(&field)?.unwrap_or(Field::Rationals);
            let (pair, notes) = models::generate(&name, m, d, field)?;
            let note_refs: Vec<&str> = notes.iter().map(String::as_str).collect();
            let text = serialize_category(&pair.ambient, &note_refs);
            std::fs::write(&output, &text)?;
            println!(
                "wrote {} ({} objects, {} generators over {})",
                output.display(),
                pair.ambient.object_count(),
                pair.ambient.gen_count(),
                field
            );
            Ok(())
        }
    }
}
