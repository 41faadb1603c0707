//! Command layer behind the `spinorial` binary: each command yields a [`Report`] that
//! renders as text or JSON.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::algebra::{Blade, Multivector, Signature};
use crate::error::Result;
use crate::ideals::{
    classify, idempotent_report, involution_count, verify_idempotent, IdempotentReport,
    LabeledElement,
};
use crate::linalg::RationalMatrix;
use crate::text::render_multivector;
use crate::unitary::{
    induce_idempotent, kahler_polynomial, rational_kahler_polynomial, recover_by_projection,
    recover_structure, standard_structure,
};

pub const FORMAT_VERSION: u32 = 1;

/// Where the idempotent of an `ideal` command comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealSource {
    /// `U(n)` acting on `R^{2n}`.
    Structure(usize),
    Generators(Vec<Blade>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Classify {
        sig: Signature,
    },
    Ideal {
        sig: Signature,
        source: IdealSource,
    },
    Project {
        sig: Signature,
    },
    Recover {
        sig: Signature,
        idempotent: Multivector,
    },
    Verify {
        sig: Signature,
        idempotent: Multivector,
    },
    Kahler {
        n: usize,
        rational: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub format_version: u32,
    pub command: String,
    pub signature: Signature,
    pub payload: Payload,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Classification(ClassificationPayload),
    Idempotent(IdempotentPayload),
    Projection(Box<ProjectionPayload>),
    Structure(StructurePayload),
    Kahler(KahlerPayload),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationPayload {
    pub algebra: String,
    pub base: String,
    pub size: usize,
    pub k: usize,
    pub ideal_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledPayload {
    pub label: Blade,
    pub element: Multivector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdempotentPayload {
    pub structure: Option<usize>,
    pub f: Multivector,
    pub generators: Vec<Blade>,
    pub k: usize,
    pub algebra: String,
    pub is_idempotent: bool,
    pub is_primitive: bool,
    pub ideal_dim: usize,
    pub expected_ideal_dim: usize,
    pub division_type: Option<String>,
    pub ideal_basis: Vec<LabeledPayload>,
    pub division_basis: Vec<LabeledPayload>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionPayload {
    pub pairs: Vec<(usize, usize)>,
    pub f_tilde: Multivector,
    pub extra_generators: Vec<Blade>,
    pub e: Multivector,
    pub h: Multivector,
    pub omega_tilde: Multivector,
    pub splitting_holds: bool,
    pub idempotent: IdempotentPayload,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructurePayload {
    pub n: usize,
    pub omega: Multivector,
    pub j: RationalMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KahlerPayload {
    pub n: usize,
    pub rational: bool,
    pub polynomial: Multivector,
}

fn labeled(items: &[LabeledElement]) -> Vec<LabeledPayload> {
    items
        .iter()
        .map(|e| LabeledPayload {
            label: e.label,
            element: e.element.clone(),
        })
        .collect()
}

impl IdempotentPayload {
    pub fn from_report(report: &IdempotentReport, structure: Option<usize>) -> Self {
        IdempotentPayload {
            structure,
            f: report.f.clone(),
            generators: report.generators.clone(),
            k: report.k,
            algebra: report.matrix_type.to_string(),
            is_idempotent: report.is_idempotent,
            is_primitive: report.is_primitive,
            ideal_dim: report.ideal_dim,
            expected_ideal_dim: report.expected_ideal_dim,
            division_type: report.division_type.map(|d| d.symbol().to_string()),
            ideal_basis: labeled(&report.ideal_basis),
            division_basis: labeled(&report.division_basis),
        }
    }
}

/// Runs a command.
pub fn execute(command: &Command) -> Result<Report> {
    match command {
        Command::Classify { sig } => Ok(cmd_classify(*sig)),
        Command::Ideal { sig, source } => cmd_ideal(*sig, source),
        Command::Project { sig } => cmd_project(*sig),
        Command::Recover { sig, idempotent } => cmd_recover(*sig, idempotent),
        Command::Verify { sig, idempotent } => cmd_verify(*sig, idempotent),
        Command::Kahler { n, rational } => cmd_kahler(*n, *rational),
    }
}

fn report(command: &str, signature: Signature, payload: Payload) -> Report {
    Report {
        format_version: FORMAT_VERSION,
        command: command.to_string(),
        signature,
        payload,
    }
}

pub fn cmd_classify(sig: Signature) -> Report {
    let m = classify(sig);
    let payload = ClassificationPayload {
        algebra: m.to_string(),
        base: m.base.name().to_string(),
        size: m.size,
        k: involution_count(sig),
        ideal_dim: m.minimal_ideal_dim(),
    };
    report("classify", sig, Payload::Classification(payload))
}

pub fn cmd_ideal(sig: Signature, source: &IdealSource) -> Result<Report> {
    let (r, structure) = match source {
        IdealSource::Structure(n) => (induce_idempotent(*n, sig)?, Some(*n)),
        IdealSource::Generators(gens) => (idempotent_report(sig, gens)?, None),
    };
    Ok(report(
        "ideal",
        sig,
        Payload::Idempotent(IdempotentPayload::from_report(&r, structure)),
    ))
}

pub fn cmd_project(sig: Signature) -> Result<Report> {
    let d = recover_by_projection(sig)?;
    let payload = ProjectionPayload {
        pairs: d.pairs.clone(),
        f_tilde: d.f_tilde.clone(),
        extra_generators: d.extra_generators.clone(),
        e: d.e.clone(),
        h: d.h.clone(),
        omega_tilde: d.omega_tilde.clone(),
        splitting_holds: d.splitting_holds,
        idempotent: IdempotentPayload::from_report(&d.report, None),
    };
    Ok(report(
        "project",
        sig,
        Payload::Projection(Box::new(payload)),
    ))
}

pub fn cmd_recover(sig: Signature, f: &Multivector) -> Result<Report> {
    let s = recover_structure(sig, f)?;
    let payload = StructurePayload {
        n: s.n,
        omega: s.omega,
        j: s.j,
    };
    Ok(report("recover", sig, Payload::Structure(payload)))
}

pub fn cmd_verify(sig: Signature, f: &Multivector) -> Result<Report> {
    let r = verify_idempotent(sig, f)?;
    Ok(report(
        "verify",
        sig,
        Payload::Idempotent(IdempotentPayload::from_report(&r, None)),
    ))
}

pub fn cmd_kahler(n: usize, rational: bool) -> Result<Report> {
    let sig = standard_structure(n)?.omega.signature();
    let polynomial = if rational {
        rational_kahler_polynomial(n)?
    } else {
        kahler_polynomial(n)?
    };
    let payload = KahlerPayload {
        n,
        rational,
        polynomial,
    };
    Ok(report("kahler", sig, Payload::Kahler(payload)))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn blade_list(blades: &[Blade]) -> String {
    if blades.is_empty() {
        return "none".to_string();
    }
    blades
        .iter()
        .map(|b| b.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// `f` for the scalar label, otherwise `e{..}f`.
pub fn ideal_label(label: Blade) -> String {
    if label.is_scalar() {
        "f".to_string()
    } else {
        format!("{label}f")
    }
}

fn division_label(label: Blade) -> String {
    if label.is_scalar() {
        "f".to_string()
    } else {
        format!("f{label}f")
    }
}

fn write_idempotent(out: &mut String, p: &IdempotentPayload) {
    if let Some(n) = p.structure {
        writeln!(out, "structure: U({n})").unwrap();
    }
    writeln!(out, "algebra: {}", p.algebra).unwrap();
    writeln!(out, "generators: {}", blade_list(&p.generators)).unwrap();
    writeln!(out, "k: {}", p.k).unwrap();
    writeln!(out, "f = {}", render_multivector(&p.f)).unwrap();
    writeln!(out, "idempotent: {}", yes_no(p.is_idempotent)).unwrap();
    writeln!(out, "primitive: {}", yes_no(p.is_primitive)).unwrap();
    writeln!(
        out,
        "ideal_dim: {} (minimal {})",
        p.ideal_dim, p.expected_ideal_dim
    )
    .unwrap();
    let division = p.division_type.as_deref().unwrap_or("none");
    writeln!(out, "division ring: {division}").unwrap();
    writeln!(out).unwrap();
    writeln!(out, "basis:").unwrap();
    for e in &p.ideal_basis {
        writeln!(
            out,
            "{} = {}",
            ideal_label(e.label),
            render_multivector(&e.element)
        )
        .unwrap();
    }
    writeln!(out).unwrap();
    writeln!(out, "division basis:").unwrap();
    for e in &p.division_basis {
        writeln!(
            out,
            "{} = {}",
            division_label(e.label),
            render_multivector(&e.element)
        )
        .unwrap();
    }
}

impl Report {
    /// Human-readable rendering, ending with a newline.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match &self.payload {
            Payload::Classification(c) => {
                writeln!(out, "{}, k={}, ideal_dim={}", c.algebra, c.k, c.ideal_dim).unwrap();
            }
            Payload::Idempotent(p) => {
                writeln!(out, "signature: {}", self.signature).unwrap();
                write_idempotent(&mut out, p);
            }
            Payload::Projection(p) => {
                writeln!(out, "signature: {}", self.signature).unwrap();
                let pairs: Vec<String> =
                    p.pairs.iter().map(|(a, b)| format!("({a},{b})")).collect();
                writeln!(out, "pairs: {}", pairs.join(", ")).unwrap();
                writeln!(out, "f~ = {}", render_multivector(&p.f_tilde)).unwrap();
                writeln!(out, "extra generators: {}", blade_list(&p.extra_generators)).unwrap();
                writeln!(out, "e = {}", render_multivector(&p.e)).unwrap();
                writeln!(out, "h = {}", render_multivector(&p.h)).unwrap();
                writeln!(out, "omega~ = {}", render_multivector(&p.omega_tilde)).unwrap();
                let verdict = if p.splitting_holds { "holds" } else { "FAILS" };
                writeln!(out, "σ*(h) = P^ℚ(ω̃₀) ∧ σ*(e): {verdict}").unwrap();
                writeln!(out).unwrap();
                write_idempotent(&mut out, &p.idempotent);
            }
            Payload::Structure(s) => {
                writeln!(out, "signature: {}", self.signature).unwrap();
                writeln!(out, "n: {}", s.n).unwrap();
                writeln!(out, "omega = {}", render_multivector(&s.omega)).unwrap();
                writeln!(out, "J =").unwrap();
                write!(out, "{}", s.j).unwrap();
            }
            Payload::Kahler(k) => {
                let name = if k.rational { "P^Q" } else { "P" };
                writeln!(
                    out,
                    "{name}(omega_0) on R^{} = {}",
                    2 * k.n,
                    render_multivector(&k.polynomial)
                )
                .unwrap();
            }
        }
        out
    }

    /// Pretty JSON, ending with a newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Lines of the `basis:` section of an `ideal` or `verify` text report.
pub fn basis_section(text: &str) -> Vec<&str> {
    text.lines()
        .skip_while(|l| *l != "basis:")
        .skip(1)
        .take_while(|l| !l.is_empty())
        .collect()
}
