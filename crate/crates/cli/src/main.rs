mod commands;
mod config;
mod suite;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use commands::{BasisKind, Failure, Report, VerifyKind};
use config::{Format, Options};

const SCHEMA: &str = "qnil/1";

#[derive(Parser)]
#[command(name = "qnil", version, about = "PBW and dual canonical bases, quantum twist maps and quantum minors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Subcommand)]
enum Command {
    /// Print PBW, dual canonical or lower canonical basis slices
    Basis {
        #[arg(value_enum)]
        kind: BasisKind,
    },
    /// Apply the twist Θ_{w^-1} to an element of U_q^-(w)
    Twist,
    /// Compute a unipotent quantum minor
    Minor,
    /// Run a verification suite
    Verify {
        #[arg(value_enum)]
        what: VerifyKind,
    },
}

fn text(v: &Value, path: &str, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                text(x, &p, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                text(x, &format!("{path}[{i}]"), out);
            }
        }
        _ => {
            out.push_str(path);
            out.push_str(" = ");
            out.push_str(&v.to_string());
            out.push('\n');
        }
    }
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).unwrap() + "\n",
        Format::Text => {
            let mut s = String::new();
            text(v, "", &mut s);
            s
        }
    }
}

fn emit(v: &Value, opts: &Options) -> Result<(), String> {
    let s = render(v, opts.format());
    match &opts.output {
        Some(p) => std::fs::write(p, s).map_err(|e| format!("{}: {e}", p.display())),
        None => std::io::stdout().write_all(s.as_bytes()).map_err(|e| e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = match cli.opts.merged() {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {}", e.0);
            return ExitCode::from(2);
        }
    };
    let outcome: Result<Report, Failure> = match cli.command {
        Command::Basis { kind } => commands::basis(kind, &opts),
        Command::Twist => commands::twist(&opts),
        Command::Minor => commands::minor(&opts),
        Command::Verify { what } => commands::verify(what, &opts),
    };
    match outcome {
        Ok(r) => {
            let v = json!({"schema": SCHEMA, "command": r.command, "passed": r.passed, "result": r.result});
            if let Err(e) = emit(&v, &opts) {
                eprintln!("error: {e}");
                return ExitCode::from(3);
            }
            ExitCode::from(if r.passed { 0 } else { 1 })
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            let v = json!({"schema": SCHEMA, "error": "internal", "message": m});
            eprintln!("{}", serde_json::to_string(&v).unwrap());
            ExitCode::from(3)
        }
    }
}
