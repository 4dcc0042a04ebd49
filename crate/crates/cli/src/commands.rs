//! Subcommand implementations. Each returns the exit code and the text to
//! print on stdout; files requested by flags are written here.

use std::path::{Path, PathBuf};

use graphprod::cayley_ball::{ball_with_cap, DEFAULT_MAX_BALL};
use graphprod::iso_transport::verify_iso_on_ball_with_cap;
use graphprod::{build_product_iso, noniso_certificate, IsoError, Presentation};
use serde::Serialize;
use serde_json::json;

use crate::scenario::{Diagnostic, Scenario};

pub const DEFAULT_RADIUS: u32 = 2;

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(i32)]
pub enum Exit {
    Success = 0,
    Io = 1,
    Validation = 2,
    Construction = 3,
    Verification = 4,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit: Exit,
    pub stdout: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            exit: Exit::Success,
            stdout,
        }
    }

    fn with(exit: Exit, stdout: String) -> Self {
        Outcome { exit, stdout }
    }

    pub fn code(&self) -> i32 {
        self.exit as i32
    }
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn diagnostics(diags: &[Diagnostic]) -> Outcome {
    Outcome::with(
        Exit::Validation,
        pretty(&json!({ "valid": false, "diagnostics": diags })),
    )
}

fn load(file: &Path) -> Result<Scenario, Outcome> {
    Scenario::load(file).map_err(|d| diagnostics(&d))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Outcome> {
    std::fs::write(path, contents).map_err(|e| {
        Outcome::with(
            Exit::Io,
            pretty(&json!({ "error": "Io", "message": format!("{}: {e}", path.display()) })),
        )
    })
}

/// Which presentation of a scenario a command works on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Side {
    #[default]
    Source,
    Target,
}

fn pick(scenario: &Scenario, side: Side) -> Result<&Presentation, Outcome> {
    match side {
        Side::Source => Ok(&scenario.source),
        Side::Target => scenario.target.as_ref().ok_or_else(|| {
            diagnostics(&[Diagnostic {
                kind: "MissingTarget",
                presentation: None,
                vertex: None,
                message: "scenario has no target presentation".into(),
            }])
        }),
    }
}

fn need_target(scenario: &Scenario) -> Result<&Presentation, Outcome> {
    pick(scenario, Side::Target)
}

pub fn validate(file: &Path) -> Outcome {
    match Scenario::load(file) {
        Ok(s) => {
            let mut names = vec![s.source.name().to_string()];
            names.extend(s.target.iter().map(|t| t.name().to_string()));
            Outcome::ok(pretty(&json!({ "valid": true, "presentations": names })))
        }
        Err(d) => diagnostics(&d),
    }
}

pub fn reduce(file: &Path, word: &str, side: Side) -> Outcome {
    let run = || -> Result<Outcome, Outcome> {
        let scenario = load(file)?;
        let p = pick(&scenario, side)?;
        let parsed = p
            .parse_word(word)
            .and_then(|w| p.canonical_form(&w))
            .map_err(|e| {
                Outcome::with(
                    Exit::Validation,
                    pretty(&json!({ "error": "Word", "message": e.to_string() })),
                )
            })?;
        Ok(Outcome::ok(format!("{}\n", p.format_word(&parsed))))
    };
    run().unwrap_or_else(|o| o)
}

#[derive(Debug, Clone, Default)]
pub struct BallArgs {
    pub radius: Option<u32>,
    pub dot: Option<PathBuf>,
    pub json: Option<PathBuf>,
    pub color_by_group: bool,
    pub max_ball: Option<usize>,
    pub side: Side,
}

pub fn ball(file: &Path, args: &BallArgs) -> Outcome {
    let run = || -> Result<Outcome, Outcome> {
        let scenario = load(file)?;
        let p = pick(&scenario, args.side)?;
        let radius = args
            .radius
            .or(scenario.task.radius)
            .unwrap_or(DEFAULT_RADIUS);
        let b =
            ball_with_cap(p, radius, args.max_ball.unwrap_or(DEFAULT_MAX_BALL)).map_err(|e| {
                Outcome::with(
                    Exit::Construction,
                    pretty(&json!({ "error": "BallTooLarge", "message": e.to_string() })),
                )
            })?;
        let summary = pretty(&b.summary());
        let dot = args
            .dot
            .clone()
            .or_else(|| scenario.task.dot.as_ref().map(|d| scenario.resolve(d)));
        if let Some(path) = dot {
            write_file(&path, &b.to_dot(args.color_by_group))?;
        }
        let json_path = args
            .json
            .clone()
            .or_else(|| scenario.task.json.as_ref().map(|d| scenario.resolve(d)));
        if let Some(path) = json_path {
            write_file(&path, &summary)?;
        }
        Ok(Outcome::ok(summary))
    };
    run().unwrap_or_else(|o| o)
}

fn iso_error_kind(e: &IsoError) -> &'static str {
    match e {
        IsoError::NotABijection { .. } => "NotABijection",
        IsoError::NotAGraphIso { .. } => "NotAGraphIso",
        IsoError::DegreeMismatch { .. } => "DegreeMismatch",
        IsoError::GraphMismatch => "GraphMismatch",
        IsoError::NoVertexIso(_) => "NoVertexIso",
        IsoError::UnknownVertex(_) => "UnknownVertex",
        IsoError::AtVertex { source, .. } => iso_error_kind(source),
        IsoError::Word(_) => "Word",
        IsoError::Ball(_) => "BallTooLarge",
    }
}

fn iso_vertex(e: &IsoError) -> Option<&str> {
    match e {
        IsoError::NoVertexIso(v)
        | IsoError::UnknownVertex(v)
        | IsoError::AtVertex { vertex: v, .. } => Some(v),
        _ => None,
    }
}

fn construction_failure(e: &IsoError) -> Outcome {
    Outcome::with(
        Exit::Construction,
        pretty(&json!({
            "error": iso_error_kind(e),
            "vertex": iso_vertex(e),
            "message": e.to_string(),
        })),
    )
}

#[derive(Debug, Clone, Default)]
pub struct IsoArgs {
    pub radius: Option<u32>,
    pub json: Option<PathBuf>,
    pub max_ball: Option<usize>,
}

pub fn iso(file: &Path, args: &IsoArgs) -> Outcome {
    let run = || -> Result<Outcome, Outcome> {
        let scenario = load(file)?;
        let target = need_target(&scenario)?;
        let radius = args
            .radius
            .or(scenario.task.radius)
            .unwrap_or(DEFAULT_RADIUS);
        let product = build_product_iso(&scenario.source, target, &scenario.family)
            .map_err(|e| construction_failure(&e))?;
        let report = verify_iso_on_ball_with_cap(
            &product,
            radius,
            args.max_ball.unwrap_or(DEFAULT_MAX_BALL),
        )
        .map_err(|e| construction_failure(&e))?;
        let text = pretty(&report);
        let json_path = args
            .json
            .clone()
            .or_else(|| scenario.task.json.as_ref().map(|d| scenario.resolve(d)));
        if let Some(path) = json_path {
            write_file(&path, &text)?;
        }
        let exit = if report.passed() {
            Exit::Success
        } else {
            Exit::Verification
        };
        Ok(Outcome::with(exit, text))
    };
    run().unwrap_or_else(|o| o)
}

pub fn certificate(file: &Path, json_out: Option<&Path>) -> Outcome {
    let run = || -> Result<Outcome, Outcome> {
        let scenario = load(file)?;
        let target = need_target(&scenario)?;
        let cert = noniso_certificate(&scenario.source, target).map_err(|e| {
            Outcome::with(
                Exit::Construction,
                pretty(&json!({ "error": "Clique", "message": e.to_string() })),
            )
        })?;
        let text = match &cert {
            Some(c) => pretty(c),
            None => "no certificate\n".to_string(),
        };
        if let Some(path) = json_out {
            write_file(path, &text)?;
        }
        Ok(Outcome::ok(text))
    };
    run().unwrap_or_else(|o| o)
}
