//! Command-line front end.
//!
//! Exit codes: 0 success, 1 mathematical failure, 2 configuration or resource error,
//! 3 inconclusive (precision window empty or evaluation not certifiable).

mod commands;
pub mod config;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::field::Field;

pub use config::{Format, RunConfig, CONFIG_ENV};

#[derive(Parser, Debug)]
#[command(name = "carlitz", version, about = "Exact arithmetic for Carlitz zeta values, periods and polylogarithms")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Default)]
pub struct GlobalOpts {
    /// Field size q = p^m (at most 64).
    #[arg(long, global = true)]
    pub q: Option<u32>,
    /// Absolute precision in w-units, w = (-theta)^(-1/(q-1)).
    #[arg(long, global = true)]
    pub prec: Option<i64>,
    /// Truncation degree in t.
    #[arg(long, global = true)]
    pub tdeg: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// key=value configuration file (default: $CARLITZ_CONFIG).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Enumeration limits, e.g. max_monics=4096,at_max_tdeg=12,at_checks=3.
    #[arg(long, global = true)]
    pub caps: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MotiveLayout {
    /// Nested system of size depth+1 for --tuple.
    General,
    /// One weight --n with several alphas.
    Depth1,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Multizeta value zeta(n1,...,nd).
    Zeta {
        #[arg(long)]
        tuple: String,
    },
    /// The Carlitz period.
    Pi,
    /// The Omega function as a truncated Tate series.
    Omega,
    /// Power sum S_d(n) over monics of degree d.
    Powersum {
        #[arg(long)]
        deg: usize,
        #[arg(long)]
        n: u32,
    },
    /// Carlitz factorial Gamma_n.
    Gamma {
        #[arg(long)]
        n: u64,
    },
    /// Anderson-Thakur polynomial H_{n-1}.
    Atpoly {
        #[arg(long)]
        n: u32,
    },
    /// Carlitz multiple polylogarithm series.
    Mcpl {
        #[arg(long)]
        tuple: String,
        /// Semicolon-separated polynomials in theta and t, or "at" for Anderson-Thakur polynomials.
        #[arg(long)]
        alphas: Option<String>,
    },
    /// Verify the period-matrix system Psi^(-1) = Phi Psi.
    MotiveVerify {
        #[arg(long, value_enum, default_value = "general")]
        layout: MotiveLayout,
        #[arg(long)]
        tuple: Option<String>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        alphas: Option<String>,
        /// Perturb Psi before verifying: row,col,t-degree,w-exponent.
        #[arg(long)]
        corrupt: Option<String>,
    },
    /// Mine F_q[theta]-linear relations among products of pi and zeta values.
    Mine {
        #[arg(long)]
        targets: String,
        /// Degree bound D on the coefficient polynomials.
        #[arg(long)]
        deg: Option<usize>,
        /// Confirmation precision (default: twice --prec).
        #[arg(long)]
        confirm: Option<i64>,
    },
    /// Run a named identity check.
    Check {
        /// One of euler-like, carlitz-even, q2-identity, frobenius-p, shuffle, chang.
        name: String,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        n1: Option<u32>,
        #[arg(long)]
        n2: Option<u32>,
        #[arg(long)]
        tuple: Option<String>,
        #[arg(long, default_value_t = 0)]
        twist: u32,
        #[arg(long)]
        deg: Option<usize>,
    },
    /// Evaluate Omega^c L at theta^(q^N) and compare with the zeta side.
    ChangEval {
        #[arg(long)]
        tuple: String,
        #[arg(long, default_value_t = 0)]
        twist: u32,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Zeta { .. } => "zeta",
            Command::Pi => "pi",
            Command::Omega => "omega",
            Command::Powersum { .. } => "powersum",
            Command::Gamma { .. } => "gamma",
            Command::Atpoly { .. } => "atpoly",
            Command::Mcpl { .. } => "mcpl",
            Command::MotiveVerify { .. } => "motive-verify",
            Command::Mine { .. } => "mine",
            Command::Check { .. } => "check",
            Command::ChangEval { .. } => "chang-eval",
        }
    }
}

/// Result of one subcommand.
pub struct Outcome {
    /// Numeric and string flags specific to the subcommand, echoed in the header.
    pub params: Map<String, Value>,
    pub result: Value,
    pub text: Vec<String>,
    pub exit: i32,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::CannotCertify(_) | Error::Inconclusive(_) => 3,
        _ => 2,
    }
}

fn resolve_config(g: &GlobalOpts) -> crate::Result<RunConfig> {
    let mut cfg = RunConfig::default();
    if let Some(path) = config::config_path(g.config.clone()) {
        cfg.apply_file(&path)?;
    }
    if let Some(q) = g.q {
        cfg.q = q;
    }
    if let Some(p) = g.prec {
        cfg.prec = p;
    }
    if let Some(t) = g.tdeg {
        cfg.tdeg = t;
    }
    if let Some(f) = g.format {
        cfg.format = f;
    }
    if let Some(c) = &g.caps {
        cfg.apply_caps(c)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn header(cmd: &str, cfg: &RunConfig, field: Option<&Field>, params: &Map<String, Value>) -> Value {
    let mut all = Map::new();
    all.insert("prec".into(), json!(cfg.prec));
    all.insert("tdeg".into(), json!(cfg.tdeg));
    all.insert("max_monics".into(), json!(cfg.caps.max_monics));
    all.insert("at_max_tdeg".into(), json!(cfg.caps.at_max_tdeg));
    all.insert("at_checks".into(), json!(cfg.caps.at_checks));
    all.extend(params.clone());
    json!({
        "tool": "carlitz",
        "version": env!("CARGO_PKG_VERSION"),
        "command": cmd,
        "field": field.map(|f| f.params()),
        "params": all,
    })
}

fn text_header(cmd: &str, cfg: &RunConfig, field: Option<&Field>, params: &Map<String, Value>) -> String {
    let mut s = format!("# carlitz {} {cmd}", env!("CARGO_PKG_VERSION"));
    if let Some(f) = field {
        s += &format!(" q={} p={} m={}", f.q(), f.p(), f.params().m);
    }
    s += &format!(" prec={} tdeg={}", cfg.prec, cfg.tdeg);
    for (k, v) in params {
        match v {
            Value::String(x) => s += &format!(" {k}={x}"),
            other => s += &format!(" {k}={other}"),
        }
    }
    s
}

/// Parses `args` (including the program name) and runs, writing to the given streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    2
                }
            };
        }
    };
    let cmd = cli.command.name();
    let cfg = match resolve_config(&cli.global) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "carlitz {cmd}: {e}");
            return exit_code(&e);
        }
    };
    let field = Field::new(cfg.q);
    let result = field.clone().and_then(|f| commands::dispatch(&cli.command, &cfg, &f));
    let field = field.ok();
    match result {
        Ok(o) => {
            match cfg.format {
                Format::Json => {
                    let doc = json!({ "header": header(cmd, &cfg, field.as_ref(), &o.params), "result": o.result });
                    let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("JSON values serialize"));
                }
                Format::Text => {
                    let _ = writeln!(out, "{}", text_header(cmd, &cfg, field.as_ref(), &o.params));
                    for line in &o.text {
                        let _ = writeln!(out, "{line}");
                    }
                }
            }
            o.exit
        }
        Err(e) => {
            let code = exit_code(&e);
            if cfg.format == Format::Json {
                let doc = json!({
                    "header": header(cmd, &cfg, field.as_ref(), &Map::new()),
                    "error": { "exit": code, "message": e.to_string() },
                });
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("JSON values serialize"));
            }
            let _ = writeln!(err, "carlitz {cmd}: {e}");
            code
        }
    }
}

/// Runs with process arguments and standard streams; returns the exit code.
pub fn run() -> i32 {
    run_with(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
