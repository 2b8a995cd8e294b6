//! Command-line front end: document loading, commands and reports.
//!
//! Exit codes: 0 when the computation completed (whatever the verdict),
//! 1 when `--expect-pass` was given and the verdict is negative, 2 on
//! malformed input.

pub mod docs;
pub mod fixtures;
pub mod report;

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::aqft::{check_aqft, check_pfa_axioms, from_prefactorization, same_products, to_prefactorization};
use crate::fincat::{build_circle_model, OrthogonalCategory};
use crate::fredenhagen::{
    check_cocone, coaction_to_theta, count_simple_loop_objects, descent_check, loop_category_check,
    random_theta_object, theta_to_coaction, LoopModel, DEFAULT_PRIME_BOUND,
};
use crate::gauging::{counit_failure_witness, gauge, is_hopf_galois, is_truncated, truncate};
use crate::grouprep::{invariants, FiniteGroup};
use crate::operad::{check_operad_axioms, DEFAULT_TUPLE_CAP};
use crate::random;
use docs::{builtin_group, extension, load_files, DocError, Library};
pub use report::Report;

#[derive(Debug, Parser)]
#[command(
    name = "aqftlab",
    version,
    about = "Exact checks for algebraic quantum field theories on finite sites"
)]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Exit with status 1 when the verdict is negative.
    #[arg(long, global = true)]
    pub expect_pass: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse, resolve and validate documents.
    Validate { files: Vec<PathBuf> },
    /// Check the operad axioms of a site.
    CheckOperad {
        files: Vec<PathBuf>,
        #[arg(long)]
        site: Option<String>,
        /// Use the circle model with this many points instead of a file.
        #[arg(long)]
        circle: Option<usize>,
        /// Which part of the circle model.
        #[arg(long, default_value = "opens")]
        part: String,
        #[arg(long, default_value_t = 3)]
        max_arity: usize,
    },
    /// Check orthogonal commutativity of a theory.
    AqftCheck {
        files: Vec<PathBuf>,
        #[arg(long)]
        aqft: Option<String>,
    },
    /// Convert a theory to a prefactorization algebra and back.
    PfaRoundtrip {
        files: Vec<PathBuf>,
        #[arg(long)]
        aqft: Option<String>,
        #[arg(long, default_value_t = 3)]
        max_arity: usize,
    },
    /// Gauge an equivariant theory and compare its truncation with the orbifold.
    Gauge {
        files: Vec<PathBuf>,
        #[arg(long)]
        theory: Option<String>,
    },
    /// Decide whether the invariants of an action form a Hopf-Galois extension.
    HopfGalois {
        files: Vec<PathBuf>,
        #[arg(long)]
        action: Option<String>,
        /// Largest module searched for a counit-failure witness.
        #[arg(long, default_value_t = 8)]
        witness_cap: usize,
    },
    /// Decide whether the gauged theory is truncated.
    Truncated {
        files: Vec<PathBuf>,
        #[arg(long)]
        theory: Option<String>,
    },
    /// Present the universal algebra of a theory on a larger site.
    Extend {
        files: Vec<PathBuf>,
        /// Target object (repeat for a tuple).
        #[arg(long = "to", required = true)]
        to: Vec<String>,
        #[arg(long, default_value_t = crate::algebra::DEFAULT_DEGREE_BOUND)]
        degree_bound: usize,
        #[arg(long, default_value_t = DEFAULT_TUPLE_CAP)]
        cap: usize,
        #[arg(long)]
        aqft: Option<String>,
        /// The larger site (defaults to the only site not carrying the theory).
        #[arg(long)]
        site: Option<String>,
    },
    /// Check the cocycle conditions of a descent object.
    DescentCheck {
        files: Vec<PathBuf>,
        #[arg(long)]
        object: Option<String>,
    },
    /// Count simple objects of the loop category and check coaction round trips.
    LoopCategory {
        files: Vec<PathBuf>,
        /// A group id from the files, or `trivial`, `Z<n>`, `S<k>`.
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = DEFAULT_PRIME_BOUND)]
        prime_bound: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random objects whose round trip is checked.
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Doc(#[from] DocError),
    #[error("{0}")]
    Input(String),
}

/// Runs the command line and returns `(exit code, stdout, stderr)`.
pub fn run_to_strings<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                (0, text, String::new())
            } else {
                (2, String::new(), text)
            };
        }
    };
    match execute(&cli.command) {
        Ok(report) => {
            let out = if cli.json {
                report.render_json()
            } else {
                report.render_text()
            };
            let code = if cli.expect_pass && !report.passed { 1 } else { 0 };
            (code, out, String::new())
        }
        Err(e) => (2, String::new(), format!("error: {e}\n")),
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let (code, out, err) = run_to_strings(args);
    print!("{out}");
    eprint!("{err}");
    code
}

fn theory_site<'a>(lib: &'a Library, aqft_id: &str) -> Option<&'a str> {
    lib.aqft_site.get(aqft_id).map(String::as_str)
}

pub fn execute(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Validate { files } => {
            let lib = load_files(files)?;
            let kinds = [
                ("orthogonal_category", lib.sites.len()),
                ("algebra", lib.algebras.len()),
                ("group", lib.groups.len()),
                ("action", lib.actions.len()),
                ("aqft", lib.aqfts.len()),
                ("equivariant_aqft", lib.equivariant.len()),
                ("descent_object", lib.descent.len()),
            ];
            let mut r = Report::new("validate", "VALID", format!("{} documents", lib.count()), true).findings(
                kinds
                    .iter()
                    .map(|(k, n)| (k.to_string(), *n))
                    .collect::<std::collections::BTreeMap<_, _>>(),
            );
            for (k, n) in kinds.iter().filter(|(_, n)| *n > 0) {
                r = r.line(format!("{k}: {n}"));
            }
            Ok(r)
        }
        Command::CheckOperad {
            files,
            site,
            circle,
            part,
            max_arity,
        } => {
            let (name, c): (String, OrthogonalCategory) = match circle {
                Some(n) => {
                    let model = build_circle_model(*n).map_err(|e| CliError::Input(e.to_string()))?;
                    match part.as_str() {
                        "opens" => (format!("circle {n} opens"), model.opens),
                        "disks" => (format!("circle {n} disks"), model.disks),
                        other => return Err(CliError::Input(format!("unknown circle part {other:?}"))),
                    }
                }
                None => {
                    let lib = load_files(files)?;
                    let (id, s) = Library::pick(&lib.sites, site.as_deref(), "orthogonal_category", "site")?;
                    (id.to_string(), s.clone())
                }
            };
            let report = check_operad_axioms(&c, *max_arity);
            let ok = report.violation_count == 0;
            let mut r = Report::new("check-operad", "OPERAD", if ok { "sound" } else { "violated" }, ok)
                .param("site", &name)
                .param("max_arity", max_arity)
                .line(format!(
                    "operations: {}, instances checked: {}, violations: {}",
                    report.operations, report.instances_checked, report.violation_count
                ));
            for v in &report.violations {
                r = r.line(format!("violation: {:?} {}", v.axiom, v.detail));
            }
            Ok(r.findings(&report))
        }
        Command::AqftCheck { files, aqft } => {
            let lib = load_files(files)?;
            let (id, a) = Library::pick(&lib.aqfts, aqft.as_deref(), "aqft", "aqft")?;
            let report = check_aqft(a);
            let ok = report.passed();
            let mut r = Report::new(
                "aqft-check",
                "AQFT",
                if ok { "valid" } else { "not orthogonally commutative" },
                ok,
            )
            .param("aqft", id)
            .line(format!("orthogonal pairs checked: {}", report.pairs_checked));
            let base = a.site.base();
            for w in report.violations.iter().take(5) {
                r = r.line(format!(
                    "witness: [{}, {}] on basis ({}, {}) gives {:?}",
                    base.morphism_name(w.f1),
                    base.morphism_name(w.f2),
                    w.i,
                    w.j,
                    w.commutator.iter().map(ToString::to_string).collect::<Vec<_>>()
                ));
            }
            Ok(r.findings(&report))
        }
        Command::PfaRoundtrip { files, aqft, max_arity } => {
            let lib = load_files(files)?;
            let (id, a) = Library::pick(&lib.aqfts, aqft.as_deref(), "aqft", "aqft")?;
            let base = Report::new("pfa-roundtrip", "ROUNDTRIP", "", false)
                .param("aqft", id)
                .param("max_arity", max_arity);
            let f = match to_prefactorization(a, *max_arity) {
                Ok(f) => f,
                Err(e) => {
                    return Ok(Report {
                        verdict: "ROUNDTRIP: failed".into(),
                        ..base.line(format!("to prefactorization: {e}"))
                    })
                }
            };
            let axioms = check_pfa_axioms(&f, *max_arity);
            let back = from_prefactorization(&f);
            let (from_to, to_from) = match &back {
                Ok(b) => (
                    b.same_data(a),
                    to_prefactorization(b, *max_arity).is_ok_and(|g| same_products(&g, &f)),
                ),
                Err(_) => (false, false),
            };
            let ok = axioms.passed() && from_to && to_from;
            Ok(Report {
                verdict: format!("ROUNDTRIP: {}", if ok { "identity" } else { "failed" }),
                passed: ok,
                ..base
            }
            .line(format!(
                "operations: {}, axiom instances checked: {}, violations: {}",
                f.products.len(),
                axioms.instances_checked,
                axioms.violations.len()
            ))
            .line(format!("from(to(A)) = A: {from_to}"))
            .line(format!("to(from(F)) = F: {to_from}"))
            .findings(
                json!({"operations": f.products.len(), "axioms": axioms, "from_to": from_to, "to_from": to_from}),
            ))
        }
        Command::Gauge { files, theory } => {
            let lib = load_files(files)?;
            let (id, e) = Library::pick(&lib.equivariant, theory.as_deref(), "equivariant_aqft", "theory")?;
            let g = gauge(e);
            let base = e.theory.site.base();
            match truncate(&g) {
                Ok(t) => {
                    let ok = t.is_two_sided_inverse();
                    let mut r = Report::new(
                        "gauge",
                        "TRUNCATION",
                        if ok {
                            "isomorphic to the orbifold"
                        } else {
                            "comparison failed"
                        },
                        ok,
                    )
                    .param("theory", id);
                    let mut rows = Vec::new();
                    for c in base.objects() {
                        let row = (
                            base.object_name(c).to_string(),
                            g.pointings[c].dim(),
                            t.theory.algebras[c].dim(),
                            t.orbifold.algebras[c].dim(),
                        );
                        r = r.line(format!(
                            "{}: pointing dim {}, End dim {}, invariants dim {}",
                            row.0, row.1, row.2, row.3
                        ));
                        rows.push(row);
                    }
                    Ok(r.findings(
                        json!({"objects": rows, "iso": t.iso.components.iter().map(|m| &m.matrix).collect::<Vec<_>>()}),
                    ))
                }
                Err(err) => Ok(Report::new("gauge", "TRUNCATION", "comparison failed", false)
                    .param("theory", id)
                    .line(err.to_string())),
            }
        }
        Command::HopfGalois {
            files,
            action,
            witness_cap,
        } => {
            let lib = load_files(files)?;
            let (id, act) = Library::pick(&lib.actions, action.as_deref(), "action", "action")?;
            let v = is_hopf_galois(act).map_err(|e| CliError::Input(e.to_string()))?;
            let ok = v.is_bijective();
            let mut r = Report::new("hopf-galois", "HOPF-GALOIS", v.status.as_str(), ok)
                .param("action", id)
                .param("witness_cap", witness_cap)
                .line(format!(
                    "canonical map: {} -> {}, rank {}",
                    v.source_dim, v.target_dim, v.rank
                ))
                .line(format!("injective: {}, surjective: {}", v.injective, v.surjective));
            if let Some(w) = &v.witness {
                r = r.line(format!(
                    "witness: {:?}",
                    w.iter().map(ToString::to_string).collect::<Vec<_>>()
                ));
            }
            let mut counit = None;
            if !ok {
                let inv = invariants(act);
                if let Some(w) = counit_failure_witness(act, &inv, *witness_cap) {
                    r = r.line(format!(
                        "counit fails on {} (dim {}, counit rank {})",
                        w.description,
                        w.module.dim(),
                        w.component.rank
                    ));
                    counit =
                        Some(json!({"description": w.description, "dim": w.module.dim(), "component": w.component}));
                }
            }
            Ok(r.findings(json!({"verdict": v, "counit_witness": counit})))
        }
        Command::Truncated { files, theory } => {
            let lib = load_files(files)?;
            let (id, e) = Library::pick(&lib.equivariant, theory.as_deref(), "equivariant_aqft", "theory")?;
            let v = is_truncated(e).map_err(|e| CliError::Input(e.to_string()))?;
            let mut r = Report::new(
                "truncated",
                "TRUNCATED",
                if v.truncated { "yes" } else { "no" },
                v.truncated,
            )
            .param("theory", id);
            for (name, verdict) in &v.per_object {
                r = r.line(format!("{name}: {}", verdict.status.as_str()));
            }
            Ok(r.findings(
                v.per_object
                    .iter()
                    .map(|(n, verdict)| {
                        json!({"object": n, "status": verdict.status, "rank": verdict.rank,
                        "source_dim": verdict.source_dim, "target_dim": verdict.target_dim, "witness": verdict.witness})
                    })
                    .collect::<Vec<_>>(),
            ))
        }
        Command::Extend {
            files,
            to,
            degree_bound,
            cap,
            aqft,
            site,
        } => {
            let lib = load_files(files)?;
            let (aid, a) = Library::pick(&lib.aqfts, aqft.as_deref(), "aqft", "aqft")?;
            let own = theory_site(&lib, aid).unwrap_or_default().to_string();
            let target = match site {
                Some(s) => lib
                    .sites
                    .get(s)
                    .ok_or_else(|| CliError::Input(format!("unknown site {s:?}")))?,
                None => {
                    let others: Vec<(&String, &OrthogonalCategory)> =
                        lib.sites.iter().filter(|(k, _)| **k != own).collect();
                    match others.as_slice() {
                        [(_, s)] => *s,
                        _ => return Err(CliError::Input("choose the target site with --site".into())),
                    }
                }
            };
            let res = extension(a, target, to, *cap, *degree_bound).map_err(CliError::Input)?;
            let cocone = check_cocone(&res);
            let words: Vec<String> = res.algebra.basis().iter().map(|w| res.algebra.word_label(w)).collect();
            let r = Report::new(
                "extend",
                "EXTEND",
                format!("dim {}", res.algebra.dim()),
                cocone.passed(),
            )
            .param("aqft", aid)
            .param("to", to)
            .param("degree_bound", degree_bound)
            .param("tuple_cap", cap)
            .line(format!(
                "slice: {} objects, {} morphisms; generators: {}",
                res.slice.objects.len(),
                res.slice.morphisms.len(),
                res.algebra.generators().len()
            ))
            .line(format!("basis: {}", words.join(" ")))
            .line(format!(
                "cocone: {} ({} entries checked, {} beyond the degree bound)",
                if cocone.passed() { "commutes" } else { "fails" },
                cocone.entries_checked,
                cocone.entries_flagged
            ));
            Ok(r.findings(json!({"dim": res.algebra.dim(), "basis": words, "cocone": cocone})))
        }
        Command::DescentCheck { files, object } => {
            let lib = load_files(files)?;
            let (id, d) = Library::pick(&lib.descent, object.as_deref(), "descent_object", "object")?;
            let report = descent_check(&d.universal, &d.object).map_err(|e| CliError::Input(e.to_string()))?;
            let ok = report.passed();
            let mut r = Report::new("descent-check", "DESCENT", if ok { "valid" } else { "invalid" }, ok)
                .param("object", id)
                .param("tuple_cap", report.tuple_cap)
                .line(format!(
                    "slice objects: {}, morphisms: {}, chains checked: {}",
                    report.objects, report.morphisms, report.chains_checked
                ));
            if let Some(v) = &report.violation {
                r = r.line(format!(
                    "violation: {}",
                    serde_json::to_string(v).expect("violation serializes")
                ));
            }
            Ok(r.findings(&report))
        }
        Command::LoopCategory {
            files,
            group,
            prime_bound,
            seed,
            samples,
        } => {
            let g: FiniteGroup = if files.is_empty() {
                builtin_group(group).ok_or_else(|| CliError::Input(format!("unknown group {group:?}")))?
            } else {
                let lib = load_files(files)?;
                match lib.groups.get(group) {
                    Some(g) => (**g).clone(),
                    None => builtin_group(group).ok_or_else(|| CliError::Input(format!("unknown group {group:?}")))?,
                }
            };
            let count =
                count_simple_loop_objects(&g, *prime_bound, *seed).map_err(|e| CliError::Input(e.to_string()))?;
            let model = LoopModel::new(&Arc::new(g));
            let mut rng = random::rng(*seed);
            let mut round_trips = 0;
            for _ in 0..*samples {
                let obj = random_theta_object(&mut rng, &model, 4);
                let ok = loop_category_check(&model, &obj).passed()
                    && theta_to_coaction(&model, &obj)
                        .ok()
                        .and_then(|m| coaction_to_theta(&model, &m).ok())
                        .is_some_and(|back| back.theta == obj.theta);
                round_trips += usize::from(ok);
            }
            let ok = round_trips == *samples;
            let mut r = Report::new(
                "loop-category",
                "LOOP-CATEGORY",
                format!("{} simple objects", count.count),
                ok,
            )
            .param("group", group)
            .param("prime_bound", prime_bound)
            .param("seed", seed)
            .param("prime", count.prime);
            for (c, size, classes) in &count.per_class {
                r = r.line(format!(
                    "class of {c} (size {size}): centralizer has {classes} conjugacy classes"
                ));
            }
            r = r
                .line(format!(
                    "F_{}: center dim {}, primitive idempotents {}",
                    count.prime, count.center_dim, count.primitive_idempotents
                ))
                .line(format!("coaction round trips: {round_trips}/{samples}"));
            Ok(r.findings(json!({"count": count, "round_trips": round_trips, "samples": samples})))
        }
    }
}
