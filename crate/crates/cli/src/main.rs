use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hom_rbf::cohomology::{cohomology_dims, ComplexHandle};
use hom_rbf::deform::{
    check_equivalence, check_infinitesimal, check_nijenhuis_element, deform_ns_family, rigidity_probe,
    trivialize_cocycle, RigidityVerdict,
};
use hom_rbf::document::{catalog_document, CochainData, Document, Object, Workspace};
use hom_rbf::family::{
    check_hom_ns, check_hom_ns_family, check_omega_assoc, check_omega_bimodule, check_tridend_family,
    ns_family_from_operator, ns_family_from_tridend, ns_family_pack, omega_assoc_from_ns_family, operator_bimodule,
    tridend_from_weighted_rbf, yau_twist_ns_family,
};
use hom_rbf::hom::{
    check_bimodule, check_hom_algebra, check_two_cocycle, semidirect_product, tensor_algebra, tensor_bimodule,
};
use hom_rbf::operators::{
    check_nijenhuis_family, check_operator_morphism, check_twisted_rbf, check_weighted_rbf, nijenhuis_induced_data,
    pack_operator,
};
use hom_rbf::report::Report;
use hom_rbf::Error;
use serde::Serialize;

mod suite;

#[derive(Parser, Debug)]
#[command(
    name = "homrbf",
    version,
    about = "Exact checks for Hom-algebras and twisted Rota-Baxter families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the checker matching an object's kind.
    Check {
        file: PathBuf,
        #[arg(long)]
        object: String,
        #[arg(long)]
        json: bool,
    },
    /// Build a derived structure and print it as a new document.
    Induce {
        file: PathBuf,
        #[arg(long)]
        object: String,
        #[arg(long, value_enum)]
        what: What,
        /// Semigroup used by `tensor_omega`.
        #[arg(long)]
        omega: Option<String>,
    },
    /// Cohomology dimensions of a bimodule, Omega-bimodule or operator family.
    Cohomology {
        file: PathBuf,
        #[arg(long)]
        object: String,
        #[arg(long)]
        degree: usize,
        /// Lifts the degree cap and bounds the computation by entry count instead.
        #[arg(long)]
        max_entries: Option<u128>,
        #[arg(long)]
        json: bool,
    },
    /// Deformation analyses.
    Deform {
        file: PathBuf,
        #[arg(long)]
        object: String,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        json: bool,
    },
    /// Run every applicable property on every object of a document.
    VerifySuite {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Write the desk instances D0, D1, D2 to files.
    Catalog {
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
#[value(rename_all = "snake_case")]
enum What {
    Semidirect,
    TensorOmega,
    NsFamily,
    Tridend,
    OmegaAssoc,
    PackNs,
    PackOperator,
    OperatorBimodule,
    NijenhuisData,
    Yau,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Mode {
    Infinitesimal,
    NsFamily,
    Equivalence,
    Nijenhuis,
    Trivialize,
    Rigidity,
}

/// Outcome of a command: text for stdout and the verdict.
struct Output {
    text: String,
    passed: bool,
}

enum Failure {
    Input(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Precondition(_) | Error::Consistency(_) => Failure::Math(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

type CmdResult = Result<Output, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check { file, object, json } => cmd_check(&file, &object, json),
        Command::Induce {
            file,
            object,
            what,
            omega,
        } => cmd_induce(&file, &object, what, omega.as_deref()),
        Command::Cohomology {
            file,
            object,
            degree,
            max_entries,
            json,
        } => cmd_cohomology(&file, &object, degree, max_entries, json),
        Command::Deform {
            file,
            object,
            mode,
            json,
        } => cmd_deform(&file, &object, mode, json),
        Command::VerifySuite { file, json } => suite::cmd_verify_suite(&file, json),
        Command::Catalog { out } => cmd_catalog(&out),
    };
    match result {
        Ok(out) => {
            print!("{}", out.text);
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Math(msg)) => {
            println!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

pub(crate) fn load(file: &Path) -> Result<Workspace, Failure> {
    let text = fs::read_to_string(file).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
    Ok(Workspace::from_json(&text)?)
}

pub(crate) fn render<T: Serialize>(value: &T, text: String, json: bool) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
        s.push('\n');
        s
    } else {
        text
    }
}

fn report_output(report: Report, json: bool) -> Output {
    let text = report.to_string();
    Output {
        passed: report.passed,
        text: render(&report, text, json),
    }
}

/// Runs the checker for an object's kind.
pub(crate) fn check_object(obj: &Object) -> Result<Report, Error> {
    Ok(match obj {
        Object::Semigroup(g) => {
            let mut r = Report::new("semigroup");
            r.note(format!("order {}, validated at load", g.size()));
            match g.unit() {
                Some(u) => r.note(format!("unit {u}")),
                None => r.note("no unit"),
            }
            r
        }
        Object::HomAlgebra(a) => check_hom_algebra(a),
        Object::Bimodule(m) => check_bimodule(m),
        Object::Cocycle(c) => check_two_cocycle(c),
        Object::OperatorFamily(r) => check_twisted_rbf(r),
        Object::NijenhuisFamily(n) => check_nijenhuis_family(n),
        Object::WeightedFamily(w) => check_weighted_rbf(w),
        Object::NsAlgebra(a) => check_hom_ns(a),
        Object::NsFamily(g) => check_hom_ns_family(g),
        Object::TridendFamily(t) => check_tridend_family(t),
        Object::OmegaAssoc(g) => check_omega_assoc(g),
        Object::OmegaBimodule(m) => check_omega_bimodule(m),
        Object::Cochain(c) => {
            let h = handle_for(&c.data)?;
            let mut r = Report::new(format!("{} cochain of degree {}", h.kind().name(), c.cochain.degree));
            let member = h.membership(&c.cochain);
            r.push(hom_rbf::report::LawOutcome::verdict(
                "membership constraint",
                member.is_ok(),
            ));
            if let Err(e) = member {
                r.note(e.to_string());
            } else if h.degree_cap() >= c.cochain.degree {
                let cocycle = h.differential(&c.cochain)?.is_zero();
                r.flag(hom_rbf::report::LawOutcome::verdict("is a cocycle", cocycle));
            }
            r
        }
        Object::Deformation(d) => check_infinitesimal(d)?,
        Object::Element(e) => check_nijenhuis_element(&e.vector, &e.operator)?,
        Object::Equivalence(e) => check_equivalence(&e.source, &e.target, &e.element)?,
        Object::OperatorMorphism(m) => check_operator_morphism(&m.morphism, &m.source, &m.target)?,
    })
}

pub(crate) fn handle_for(data: &CochainData) -> Result<ComplexHandle, Error> {
    match data {
        CochainData::Ha(m) => ComplexHandle::ha(m.clone()),
        CochainData::Omega(m) => ComplexHandle::omega(m.clone()),
        CochainData::Rbf(r) => ComplexHandle::rbf(r.clone()),
    }
}

fn cmd_check(file: &Path, name: &str, json: bool) -> CmdResult {
    let ws = load(file)?;
    let report = check_object(ws.get(name)?)?;
    Ok(report_output(report, json))
}

fn wrong_input(name: &str, obj: &Object, what: &str) -> Failure {
    Failure::Input(format!("{what} does not apply to {name:?} of kind {}", obj.kind()))
}

fn cmd_induce(file: &Path, name: &str, what: What, omega: Option<&str>) -> CmdResult {
    let ws = load(file)?;
    let obj = ws.get(name)?;
    let label = what.to_possible_value().expect("named").get_name().to_string();
    let bad = || wrong_input(name, obj, &label);
    let derived = match (what, obj) {
        (What::Semidirect, Object::Cocycle(c)) => Object::HomAlgebra(semidirect_product(c)?),
        (What::Semidirect, Object::OperatorFamily(r)) => Object::HomAlgebra(semidirect_product(r.cocycle())?),
        (What::TensorOmega, _) => {
            let g_name = omega.ok_or_else(|| Failure::Input("tensor_omega needs --omega".into()))?;
            let g = match ws.get(g_name)? {
                Object::Semigroup(g) => g.clone(),
                other => return Err(wrong_input(g_name, other, "--omega")),
            };
            match obj {
                Object::HomAlgebra(a) => {
                    require(check_hom_algebra(a))?;
                    Object::HomAlgebra(tensor_algebra(a, &g))
                }
                Object::Cocycle(c) => Object::Cocycle(tensor_bimodule(c, &g)?.1),
                _ => return Err(bad()),
            }
        }
        (What::NsFamily, Object::OperatorFamily(r)) => Object::NsFamily(ns_family_from_operator(r)?),
        (What::NsFamily, Object::TridendFamily(t)) => Object::NsFamily(ns_family_from_tridend(t)?),
        (What::Tridend, Object::WeightedFamily(w)) => Object::TridendFamily(tridend_from_weighted_rbf(w)?),
        (What::OmegaAssoc, Object::NsFamily(g)) => Object::OmegaAssoc(omega_assoc_from_ns_family(g)?),
        (What::OmegaAssoc, Object::OperatorFamily(r)) => {
            Object::OmegaAssoc(omega_assoc_from_ns_family(&ns_family_from_operator(r)?)?)
        }
        (What::PackNs, Object::NsFamily(g)) => Object::NsAlgebra(ns_family_pack(g)?),
        (What::PackOperator, Object::OperatorFamily(r)) => Object::OperatorFamily(pack_operator(r)?),
        (What::OperatorBimodule, Object::OperatorFamily(r)) => Object::OmegaBimodule(operator_bimodule(r)?),
        (What::NijenhuisData, Object::NijenhuisFamily(n)) => Object::OperatorFamily(nijenhuis_induced_data(n)?),
        (What::Yau, Object::NsFamily(g)) => {
            require(check_hom_ns_family(g))?;
            Object::NsFamily(yau_twist_ns_family(g, g.p())?)
        }
        _ => return Err(bad()),
    };
    let doc = Document::single(&format!("{name}.{label}"), &derived);
    let mut text = doc.to_json();
    text.push('\n');
    Ok(Output { text, passed: true })
}

fn require(report: Report) -> Result<(), Failure> {
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Math(report.to_string()))
    }
}

fn cmd_cohomology(file: &Path, name: &str, degree: usize, max_entries: Option<u128>, json: bool) -> CmdResult {
    let ws = load(file)?;
    let obj = ws.get(name)?;
    let mut h = match obj {
        Object::Bimodule(m) => ComplexHandle::ha(m.clone())?,
        Object::OmegaBimodule(m) => ComplexHandle::omega(m.clone())?,
        Object::OperatorFamily(r) => ComplexHandle::rbf(r.clone())?,
        Object::Deformation(d) => ComplexHandle::rbf(d.base().clone())?,
        _ => return Err(wrong_input(name, obj, "cohomology")),
    };
    if let Some(max) = max_entries {
        h = h.with_degree_cap(usize::MAX - 1).with_max_entries(max);
    }
    let dims = cohomology_dims(&h, degree)?;
    let text = format!(
        "{} complex, degree {}: dim C = {}, dim Z = {}, dim B = {}, dim H = {}\n",
        dims.complex.name(),
        dims.degree,
        dims.dim_c,
        dims.dim_z,
        dims.dim_b,
        dims.dim_h
    );
    Ok(Output {
        text: render(&dims, text, json),
        passed: true,
    })
}

#[derive(Serialize)]
struct TrivializeOutput {
    coboundary: bool,
    particular: Option<Vec<String>>,
    kernel: Vec<Vec<String>>,
    candidates: Vec<hom_rbf::deform::Candidate>,
}

fn cmd_deform(file: &Path, name: &str, mode: Mode, json: bool) -> CmdResult {
    let ws = load(file)?;
    let obj = ws.get(name)?;
    let label = mode.to_possible_value().expect("named").get_name().to_string();
    let bad = || wrong_input(name, obj, &format!("mode {label}"));
    match (mode, obj) {
        (Mode::Infinitesimal, Object::Deformation(d)) => Ok(report_output(check_infinitesimal(d)?, json)),
        (Mode::NsFamily, Object::Deformation(d)) => Ok(report_output(deform_ns_family(d)?, json)),
        (Mode::Equivalence, Object::Equivalence(e)) => Ok(report_output(
            check_equivalence(&e.source, &e.target, &e.element)?,
            json,
        )),
        (Mode::Nijenhuis, Object::Element(e)) => {
            Ok(report_output(check_nijenhuis_element(&e.vector, &e.operator)?, json))
        }
        (Mode::Trivialize, Object::Deformation(d)) => {
            let triv = trivialize_cocycle(d.base(), &d.direction_cochain())?;
            let fmt = |v: &[hom_rbf::Q]| v.iter().map(hom_rbf::scalar::format_rational).collect::<Vec<_>>();
            let out = match &triv {
                Some(t) => TrivializeOutput {
                    coboundary: true,
                    particular: Some(fmt(&t.particular)),
                    kernel: t.kernel.iter().map(|k| fmt(k)).collect(),
                    candidates: t.candidates.clone(),
                },
                None => TrivializeOutput {
                    coboundary: false,
                    particular: None,
                    kernel: Vec::new(),
                    candidates: Vec::new(),
                },
            };
            let mut text = String::new();
            if let Some(t) = &triv {
                text.push_str(&format!("coboundary of x = ({})\n", fmt(&t.particular).join(", ")));
                for k in &t.kernel {
                    text.push_str(&format!("  kernel direction ({})\n", fmt(k).join(", ")));
                }
                for c in &t.candidates {
                    text.push_str(&format!(
                        "  candidate {} = ({}): {}\n",
                        c.label,
                        c.element.join(", "),
                        if c.nijenhuis {
                            "Nijenhuis element"
                        } else {
                            "not a Nijenhuis element"
                        }
                    ));
                }
            } else {
                text.push_str("not a coboundary\n");
            }
            Ok(Output {
                passed: out.coboundary,
                text: render(&out, text, json),
            })
        }
        (Mode::Rigidity, Object::Deformation(_) | Object::OperatorFamily(_)) => {
            let r = match obj {
                Object::Deformation(d) => d.base(),
                Object::OperatorFamily(r) => r,
                _ => unreachable!(),
            };
            let probe = rigidity_probe(r)?;
            let verdict = match probe.verdict {
                RigidityVerdict::SufficientConditionMet => {
                    "rigid (every Z^1 basis cocycle is the coboundary of a Nijenhuis element)"
                }
                RigidityVerdict::Inconclusive => "inconclusive",
            };
            let mut text = format!(
                "dim Z^1 = {}, dim B^1 = {}, dim H^1 = {}\nverdict: {verdict}\n",
                probe.dim_z1, probe.dim_b1, probe.dim_h1
            );
            for (i, o) in probe.outcomes.iter().enumerate() {
                text.push_str(&format!(
                    "  cocycle {i}: {}{}\n",
                    if o.coboundary { "coboundary" } else { "not a coboundary" },
                    o.witness
                        .as_ref()
                        .map(|w| format!(", witness ({})", w.element.join(", ")))
                        .unwrap_or_default()
                ));
            }
            Ok(Output {
                passed: probe.verdict == RigidityVerdict::SufficientConditionMet,
                text: render(&probe, text, json),
            })
        }
        _ => Err(bad()),
    }
}

fn cmd_catalog(out: &Path) -> CmdResult {
    fs::create_dir_all(out).map_err(|e| Failure::Input(format!("{}: {e}", out.display())))?;
    let full = catalog_document();
    let ws = Workspace::load(&full)?;
    let mut written = Vec::new();
    for name in ["D0", "D1", "D2"] {
        let doc = Document::single(name, ws.get(name)?);
        written.push((format!("{}.json", name.to_lowercase()), doc));
    }
    written.push(("catalog.json".to_string(), full));
    let mut text = String::new();
    for (file, doc) in written {
        let path = out.join(&file);
        fs::write(&path, doc.to_json() + "\n").map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        text.push_str(&format!("wrote {}\n", path.display()));
    }
    Ok(Output { text, passed: true })
}
