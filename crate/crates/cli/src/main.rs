use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use singer_core::andreev::{andreev_check, AndreevTranscript};
use singer_core::certify::{certify, deserialize, serialize, verify};
use singer_core::complex::{
    parse_triangulation, CellComplexDocument, LabeledCellComplex, LabeledTriangulation,
};
use singer_core::coxeter::{format_fraction, l2_euler_characteristic, metric_flag_check};
use singer_core::generate::{generate, GeneratorConfig};
use singer_core::Error;

const INVALID: u8 = 2;
const REJECTED: u8 = 3;
const CONTRADICTION: u8 = 4;

#[derive(Parser)]
#[command(
    name = "singer",
    version,
    about = "Certify l2-acyclicity of Coxeter groups with 2-sphere nerves"
)]
struct Cli {
    /// Machine-readable JSON output
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a triangulation and check the metric flag condition
    Validate { file: PathBuf },
    /// Build a certificate
    Certify {
        file: PathBuf,
        /// Write the certificate here instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Re-check a certificate against its input
    Verify { file: PathBuf, certificate: PathBuf },
    /// Exact l2-Euler characteristic
    Euler { file: PathBuf },
    /// Andreev transcript of a triangulation or cell complex
    Andreev { file: PathBuf },
    /// Generate a random metric-flag triangulation
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        vertices: usize,
        #[arg(long = "plant-3", default_value_t = 0)]
        plant_3: usize,
        #[arg(long = "plant-4", default_value_t = 0)]
        plant_4: usize,
        /// Comma-separated labels
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5")]
        palette: Vec<u32>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure {
        code: INVALID,
        message: e.to_string(),
    }
}

type Run = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Run {
    match &cli.command {
        Command::Validate { file } => validate(cli.json, file),
        Command::Certify { file, output } => certify_cmd(cli.json, file, output.as_deref()),
        Command::Verify { file, certificate } => verify_cmd(cli.json, file, certificate),
        Command::Euler { file } => {
            let l = read_triangulation(file)?;
            let x = format_fraction(&l2_euler_characteristic(&l).map_err(invalid)?);
            if cli.json {
                println!("{}", json!({ "euler": x }));
            } else {
                println!("{x}");
            }
            Ok(())
        }
        Command::Andreev { file } => andreev_cmd(cli.json, file),
        Command::Gen {
            seed,
            vertices,
            plant_3,
            plant_4,
            palette,
            output,
        } => {
            let cfg = GeneratorConfig {
                seed: *seed,
                vertices: *vertices,
                palette: palette.clone(),
                plant_3: *plant_3,
                plant_4: *plant_4,
            };
            let l = generate(&cfg).map_err(invalid)?;
            emit(output.as_deref(), &l.canonical_bytes())?;
            if output.is_some() && cli.json {
                println!(
                    "{}",
                    json!({ "vertices": l.vertex_count(), "digest": l.digest() })
                );
            }
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn read_triangulation(path: &Path) -> Result<LabeledTriangulation, Failure> {
    parse_triangulation(&read(path)?).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

/// Writes to `path`, or stdout followed by a newline.
fn emit(path: Option<&Path>, bytes: &[u8]) -> Run {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| invalid(format!("{}: {e}", p.display()))),
        None => {
            println!("{}", String::from_utf8_lossy(bytes));
            Ok(())
        }
    }
}

fn validate(as_json: bool, file: &Path) -> Run {
    let l = match read_triangulation(file) {
        Ok(l) => l,
        Err(f) if as_json => {
            println!("{}", json!({ "valid": false, "error": f.message }));
            return Err(Failure {
                message: String::new(),
                ..f
            });
        }
        Err(f) => return Err(f),
    };
    let report = metric_flag_check(&l);
    if as_json {
        println!(
            "{}",
            json!({
                "valid": report.passed(),
                "vertices": l.vertex_count(),
                "digest": l.digest(),
                "violations": report.violations,
            })
        );
    } else if report.passed() {
        println!("ok: {} vertices, metric flag", l.vertex_count());
    } else {
        for v in &report.violations {
            let clause = format!("{:?}", v.clause).to_lowercase();
            println!(
                "violation: clause ({clause}) at {:?} labels {:?}",
                v.vertices, v.labels
            );
        }
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure {
            code: INVALID,
            message: String::new(),
        })
    }
}

fn certify_cmd(as_json: bool, file: &Path, output: Option<&Path>) -> Run {
    let l = read_triangulation(file)?;
    let cert = match certify(&l) {
        Ok(c) => c,
        Err(Error::InternalContradiction(msg)) => return Err(dump_contradiction(&l, &msg)),
        Err(e) => return Err(invalid(e)),
    };
    let bytes = serialize(&cert);
    match output {
        Some(p) => {
            emit(Some(p), &bytes)?;
            if as_json {
                println!("{}", json!({ "summary": cert.summary(), "output": p }));
            } else {
                println!("{}", cert.summary());
            }
        }
        None => {
            emit(None, &bytes)?;
            eprintln!("{}", cert.summary());
        }
    }
    Ok(())
}

/// Keeps the input and the message for inspection.
fn dump_contradiction(l: &LabeledTriangulation, msg: &str) -> Failure {
    let dir = std::env::temp_dir().join(format!("singer-contradiction-{}", &l.digest()[..16]));
    let saved = std::fs::create_dir_all(&dir)
        .and_then(|_| std::fs::write(dir.join("input.json"), l.canonical_bytes()))
        .and_then(|_| std::fs::write(dir.join("error.txt"), msg));
    let place = match saved {
        Ok(()) => format!("artifacts in {}", dir.display()),
        Err(e) => format!("could not save artifacts: {e}"),
    };
    Failure {
        code: CONTRADICTION,
        message: format!("internal contradiction: {msg}\n{place}"),
    }
}

fn verify_cmd(as_json: bool, file: &Path, certificate: &Path) -> Run {
    let l = read_triangulation(file)?;
    let cert = deserialize(&read(certificate)?)
        .map_err(|e| invalid(format!("{}: {e}", certificate.display())))?;
    let report = verify(&l, &cert);
    if as_json {
        println!(
            "{}",
            serde_json::to_string(&report).expect("reports serialize")
        );
    } else if report.accepted {
        println!("accepted: {} nodes checked", report.nodes_checked);
    } else {
        println!("rejected");
        for f in &report.failures {
            println!("  {}: {}", f.path, f.reason);
        }
    }
    if report.accepted {
        Ok(())
    } else {
        Err(Failure {
            code: REJECTED,
            message: String::new(),
        })
    }
}

fn andreev_cmd(as_json: bool, file: &Path) -> Run {
    let bytes = read(file)?;
    // triangulations first, then cell complexes
    let x = match parse_triangulation(&bytes) {
        Ok(l) => LabeledCellComplex::from_triangulation(&l),
        Err(first) => serde_json::from_slice::<CellComplexDocument>(&bytes)
            .map_err(|_| invalid(format!("{}: {first}", file.display())))
            .and_then(|doc| LabeledCellComplex::from_document(&doc).map_err(invalid))?,
    };
    let t = andreev_check(&x).map_err(invalid)?;
    if as_json {
        println!(
            "{}",
            serde_json::to_string(&t).expect("transcripts serialize")
        );
    } else {
        print_transcript(&t);
    }
    Ok(())
}

fn print_transcript(t: &AndreevTranscript) {
    for r in &t.conditions {
        let failed = r.instances.iter().filter(|i| !i.holds).count();
        let verdict = if r.holds { "pass" } else { "FAIL" };
        println!(
            "({}) {verdict}: {} instances, {failed} failing",
            r.condition.roman(),
            r.instances.len()
        );
        if let Some(w) = r.witness() {
            println!("    witness {:?} labels {:?}", w.vertices, w.labels);
        }
    }
    println!("{}", if t.passed { "passed" } else { "failed" });
}
