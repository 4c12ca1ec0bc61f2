//! Command-line entry point: parse JSON inputs, run one check, emit a JSON
//! report with a machine-readable verdict.
//!
//! Exit codes: 0 pass, 1 fail, 2 inconclusive, 3 input error.  Reports go
//! to standard output, diagnostics to standard error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use deform_core::algebra::{ArtinLocalAlgebra, FiniteAlgebra};
use deform_core::barcobar::TruncatedComplex;
use deform_core::error::Error;
use deform_core::exact::Rat;
use deform_core::flat::{
    flat_equivalent, flat_to_mc, flatness_check, verify_flat_isomorphism, verify_triangle,
    FlatVerdict,
};
use deform_core::gauge::{act_assoc, exp_assoc, gauge_equivalent, EquivOptions, GaugeVerdict};
use deform_core::hochschild::{hh_dimension, Cochain, HochschildCtx, DEFAULT_MAX_ARITY};
use deform_core::relations::{delta_of_beta, h0_compute, mc_rel_check};
use deform_core::{fixtures, io as dio};

#[derive(Parser)]
#[command(name = "deform", version, about = "Deformations of finite-dimensional associative algebras over Artin local bases, in exact rational arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed echoed into the report, for reproducible harnesses.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Check associativity of an algebra's structure constants.
    CheckAssoc {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Validate an Artin local base candidate.
    ValidateBase {
        #[arg(long)]
        base: PathBuf,
    },
    /// Check the Maurer-Cartan equation for a deformation cochain.
    McCheck {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        cochain: PathBuf,
    },
    /// Hochschild cohomology dimension in one degree.
    Hh {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    /// Act on a Maurer-Cartan cochain by the exponential of a generator
    /// (pass --cochain twice: the generator first, the deformation second).
    GaugeAct {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        base: PathBuf,
        #[arg(long = "cochain", num_args = 1, action = clap::ArgAction::Append)]
        cochains: Vec<PathBuf>,
    },
    /// Decide gauge equivalence of two Maurer-Cartan cochains.
    GaugeEquiv {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        base: PathBuf,
        #[arg(long = "cochain", num_args = 1, action = clap::ArgAction::Append)]
        cochains: Vec<PathBuf>,
    },
    /// Verify that the (optionally deformed) resolution differential
    /// squares to zero on the truncation.
    D2Check {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        base: Option<PathBuf>,
        #[arg(long)]
        cochain: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        word_bound: usize,
    },
    /// Verify the contraction identity on the fixed-polynomial-degree rows.
    HomotopyCheck {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, default_value_t = 4)]
        word_bound: usize,
    },
    /// Compute the resolution-differential perturbation of a deformation.
    Delta {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        cochain: PathBuf,
        #[arg(long, default_value_t = 3)]
        word_bound: usize,
    },
    /// Verify that a perturbed differential squares to zero.
    McRelCheck {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        derivation: PathBuf,
        #[arg(long, default_value_t = 3)]
        word_bound: usize,
    },
    /// Degree-zero homology of a deformed resolution, with its product.
    H0 {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        derivation: PathBuf,
        #[arg(long, default_value_t = 3)]
        word_bound: usize,
    },
    /// Certify flatness of a deformation by basis lifting.
    FlatCheck {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        flat: PathBuf,
    },
    /// Recover a deformation cochain from a flat deformation.
    FlatToMc {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        flat: PathBuf,
    },
    /// Decide equivalence of two flat deformations.
    FlatEquiv {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        base: PathBuf,
        #[arg(long = "flat", num_args = 1, action = clap::ArgAction::Append)]
        flats: Vec<PathBuf>,
    },
    /// Run the whole comparison triangle for one deformation.
    Triangle {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        cochain: PathBuf,
        #[arg(long, default_value_t = 3)]
        word_bound: usize,
    },
}

#[derive(Clone, Copy, PartialEq)]
enum Verdict {
    Pass,
    Fail,
    Inconclusive,
    InputError,
}

impl Verdict {
    fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
            Verdict::InputError => "error",
        }
    }

    fn exit_code(self) -> u8 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 2,
            Verdict::InputError => 3,
        }
    }
}

#[derive(Serialize)]
struct Report {
    command: String,
    verdict: String,
    details: Value,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    let (verdict, details) = match run(&cli) {
        Ok(outcome) => outcome,
        Err(err) => {
            eprintln!("deform: {err}");
            (Verdict::InputError, json!({ "error": err.to_string() }))
        }
    };
    let mut details = details;
    if let Value::Object(map) = &mut details {
        map.insert("seed".into(), json!(cli.seed));
    }
    let report = Report {
        command: name.to_string(),
        verdict: verdict.as_str().to_string(),
        details,
    };
    println!("{}", serde_json::to_string(&report).expect("report serialises"));
    ExitCode::from(verdict.exit_code())
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::CheckAssoc { .. } => "check-assoc",
        Command::ValidateBase { .. } => "validate-base",
        Command::McCheck { .. } => "mc-check",
        Command::Hh { .. } => "hh",
        Command::GaugeAct { .. } => "gauge-act",
        Command::GaugeEquiv { .. } => "gauge-equiv",
        Command::D2Check { .. } => "d2-check",
        Command::HomotopyCheck { .. } => "homotopy-check",
        Command::Delta { .. } => "delta",
        Command::McRelCheck { .. } => "mc-rel-check",
        Command::H0 { .. } => "h0",
        Command::FlatCheck { .. } => "flat-check",
        Command::FlatToMc { .. } => "flat-to-mc",
        Command::FlatEquiv { .. } => "flat-equiv",
        Command::Triangle { .. } => "triangle",
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

fn load_algebra(path: &Path) -> Result<FiniteAlgebra, Error> {
    dio::parse_algebra(&read(path)?)
}

fn load_base(path: &Path) -> Result<ArtinLocalAlgebra, Error> {
    dio::parse_base(&read(path)?)
}

fn load_cochain(
    path: &Path,
    alg: &FiniteAlgebra,
    base: &ArtinLocalAlgebra,
) -> Result<Cochain, Error> {
    dio::parse_cochain(&read(path)?, alg, base)
}

fn embed(text: String) -> Value {
    serde_json::from_str(&text).expect("domain serialisation is valid JSON")
}

fn rational_matrix(m: &[Vec<Rat>]) -> Value {
    Value::Array(
        m.iter()
            .map(|row| Value::Array(row.iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}

fn exactly_two<'a>(paths: &'a [PathBuf], what: &str) -> Result<(&'a Path, &'a Path), Error> {
    if paths.len() != 2 {
        return Err(Error::InvalidInput(format!(
            "expected --{what} twice, got {}",
            paths.len()
        )));
    }
    Ok((&paths[0], &paths[1]))
}

fn run(cli: &Cli) -> Result<(Verdict, Value), Error> {
    match &cli.command {
        Command::CheckAssoc { algebra } => {
            let alg = load_algebra(algebra)?;
            match alg.check_associative() {
                None => Ok((Verdict::Pass, json!({ "dim": alg.dim }))),
                Some(w) => Ok((
                    Verdict::Fail,
                    json!({
                        "witness": {
                            "triple": [w.triple.0, w.triple.1, w.triple.2],
                            "associator": w.associator.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                        }
                    }),
                )),
            }
        }
        Command::ValidateBase { base } => {
            let candidate = dio::parse_base_candidate(&read(base)?)?;
            match candidate.validate() {
                Ok(()) => Ok((
                    Verdict::Pass,
                    json!({ "dim": candidate.dim, "nilpotency": candidate.nilpotency }),
                )),
                Err(defect) => Ok((Verdict::Fail, json!({ "defect": defect.to_string() }))),
            }
        }
        Command::McCheck { algebra, base, cochain } => {
            let alg = load_algebra(algebra)?;
            let base = load_base(base)?;
            let beta = load_cochain(cochain, &alg, &base)?;
            let ctx = HochschildCtx::new(&alg, &base);
            let outcome = ctx.mc_check(&beta)?;
            if outcome.passed {
                Ok((Verdict::Pass, json!({})))
            } else {
                let residual = outcome.residual.expect("failed check keeps the residual");
                Ok((
                    Verdict::Fail,
                    json!({ "residual": embed(dio::cochain_to_json(&residual)) }),
                ))
            }
        }
        Command::Hh { algebra, degree } => {
            let alg = load_algebra(algebra)?;
            let dim = hh_dimension(&alg, *degree, DEFAULT_MAX_ARITY)?;
            Ok((Verdict::Pass, json!({ "degree": degree, "dimension": dim })))
        }
        Command::GaugeAct { algebra, base, cochains } => {
            let alg = load_algebra(algebra)?;
            let base = load_base(base)?;
            let (gen_path, beta_path) = exactly_two(cochains, "cochain")?;
            let generator = load_cochain(gen_path, &alg, &base)?;
            let beta = load_cochain(beta_path, &alg, &base)?;
            let phi = exp_assoc(&generator, &alg, &base)?;
            let acted = act_assoc(&phi, &beta, &alg, &base)?;
            // self-verification: the result must again satisfy the equation
            let ctx = HochschildCtx::new(&alg, &base);
            let verified = ctx.mc_check(&acted)?.passed;
            if !verified {
                return Err(Error::Internal("gauge action broke the Maurer-Cartan equation".into()));
            }
            Ok((
                Verdict::Pass,
                json!({
                    "result": embed(dio::cochain_to_json(&acted)),
                    "result_verified_mc": true,
                }),
            ))
        }
        Command::GaugeEquiv { algebra, base, cochains } => {
            let alg = load_algebra(algebra)?;
            let base = load_base(base)?;
            let (p1, p2) = exactly_two(cochains, "cochain")?;
            let beta1 = load_cochain(p1, &alg, &base)?;
            let beta2 = load_cochain(p2, &alg, &base)?;
            match gauge_equivalent(&beta1, &beta2, &alg, &base, &EquivOptions::default())? {
                GaugeVerdict::Equivalent(witness) => {
                    // replay the witness before printing it
                    let replayed = act_assoc(&witness.element, &beta1, &alg, &base)?;
                    if replayed != beta2 {
                        return Err(Error::Internal("equivalence witness failed the replay".into()));
                    }
                    Ok((
                        Verdict::Pass,
                        json!({
                            "verdict": "equivalent",
                            "witness": embed(dio::cochain_to_json(&witness.generator)),
                            "witness_verified": true,
                        }),
                    ))
                }
                GaugeVerdict::Inequivalent => Ok((
                    Verdict::Fail,
                    json!({ "verdict": "inequivalent", "witness": Value::Null }),
                )),
                GaugeVerdict::Inconclusive => Ok((
                    Verdict::Inconclusive,
                    json!({ "verdict": "inconclusive", "witness": Value::Null }),
                )),
            }
        }
        Command::D2Check { algebra, base, cochain, word_bound } => {
            let alg = load_algebra(algebra)?;
            let base = match base {
                Some(p) => load_base(p)?,
                None => fixtures::scalar_base(),
            };
            let beta = match cochain {
                Some(p) => Some(load_cochain(p, &alg, &base)?),
                None => None,
            };
            let complex = TruncatedComplex::build(&alg, &base, *word_bound, beta.as_ref())?;
            let gradings_ok = complex
                .bases
                .iter()
                .all(|(d, words)| words.iter().all(|w| w.degree() == *d));
            match complex.d_squared_residual() {
                None if gradings_ok => Ok((
                    Verdict::Pass,
                    json!({ "word_bound": word_bound, "gradings": "degree = arrows - polydegree" }),
                )),
                None => Err(Error::Internal("word enumeration broke the gradings".into())),
                Some((d, mat)) => Ok((
                    Verdict::Fail,
                    json!({
                        "first_failure_degree": d,
                        "nonzero_entries": mat.entries().count(),
                    }),
                )),
            }
        }
        Command::HomotopyCheck { algebra, word_bound } => {
            let alg = load_algebra(algebra)?;
            let ok = homotopy_rows_hold(&alg, *word_bound);
            if ok {
                Ok((Verdict::Pass, json!({ "rows": (2..=*word_bound).collect::<Vec<_>>() })))
            } else {
                Ok((Verdict::Fail, json!({})))
            }
        }
        Command::Delta { algebra, base, cochain, word_bound } => {
            let alg = load_algebra(algebra)?;
            let base = load_base(base)?;
            let beta = load_cochain(cochain, &alg, &base)?;
            let delta = delta_of_beta(&beta, &alg, &base, *word_bound)?;
            let check = mc_rel_check(&delta, &alg, &base, *word_bound)?;
            if !check.passed {
                return Err(Error::Internal("induced perturbation fails its own check".into()));
            }
            Ok((
                Verdict::Pass,
                json!({ "derivation": embed(dio::derivation_to_json(&delta)) }),
            ))
        }
        Command::McRelCheck { algebra, base, derivation, word_bound } => {
            let alg = load_algebra(algebra)?;
            let base = load_base(base)?;
            let delta = dio::parse_derivation(&read(derivation)?, &alg, &base)?;
            let outcome = mc_rel_check(&delta, &alg, &base, *word_bound)?;
            if outcome.passed {
                Ok((Verdict::Pass, json!({})))
            } else {
                let (degree, mat) = outcome.residual.expect("failed check keeps the residual");
                Ok((
                    Verdict::Fail,
                    json!({
                        "first_failure_degree": degree,
                        "nonzero_entries": mat.entries().count(),
                    }),
                ))
            }
        }
        Command::H0 { algebra, base, derivation, word_bound } => {
            let alg = load_algebra(algebra)?;
            let base = load_base(base)?;
            let delta = dio::parse_derivation(&read(derivation)?, &alg, &base)?;
            let h0 = h0_compute(&delta, &alg, &base, *word_bound)?;
            let mul: Vec<Vec<Value>> = h0
                .mul
                .iter()
                .map(|row| row.iter().map(|e| rational_matrix(&e.coeffs)).collect())
                .collect();
            Ok((
                Verdict::Pass,
                json!({
                    "dim_k": h0.dim_k,
                    "section": h0.section,
                    "mul": mul,
                }),
            ))
        }
        Command::FlatCheck { algebra, base, flat } => {
            let alg = load_algebra(algebra)?;
            let base = load_base(base)?;
            let t = dio::parse_flat(&read(flat)?)?;
            match flatness_check(&t, &alg, &base) {
                Ok(witness) => Ok((
                    Verdict::Pass,
                    json!({ "witness_basis": rational_matrix(&witness.lifts) }),
                )),
                Err(Error::NotFlat(reason)) => {
                    Ok((Verdict::Fail, json!({ "reason": reason })))
                }
                Err(other) => Err(other),
            }
        }
        Command::FlatToMc { algebra, base, flat } => {
            let alg = load_algebra(algebra)?;
            let base = load_base(base)?;
            let t = dio::parse_flat(&read(flat)?)?;
            let beta = flat_to_mc(&t, &alg, &base)?;
            let ctx = HochschildCtx::new(&alg, &base);
            if !ctx.mc_check(&beta)?.passed {
                return Err(Error::Internal("recovered cochain is not Maurer-Cartan".into()));
            }
            Ok((
                Verdict::Pass,
                json!({ "cochain": embed(dio::cochain_to_json(&beta)), "result_verified_mc": true }),
            ))
        }
        Command::FlatEquiv { algebra, base, flats } => {
            let alg = load_algebra(algebra)?;
            let base = load_base(base)?;
            let (p1, p2) = exactly_two(flats, "flat")?;
            let t1 = dio::parse_flat(&read(p1)?)?;
            let t2 = dio::parse_flat(&read(p2)?)?;
            match flat_equivalent(&t1, &t2, &alg, &base, &EquivOptions::default())? {
                FlatVerdict::Equivalent(phi) => {
                    verify_flat_isomorphism(&phi, &t1, &t2, &base)?;
                    Ok((
                        Verdict::Pass,
                        json!({
                            "verdict": "equivalent",
                            "witness": rational_matrix(&phi),
                            "witness_verified": true,
                        }),
                    ))
                }
                FlatVerdict::Inequivalent => Ok((
                    Verdict::Fail,
                    json!({ "verdict": "inequivalent", "witness": Value::Null }),
                )),
                FlatVerdict::Inconclusive => Ok((
                    Verdict::Inconclusive,
                    json!({ "verdict": "inconclusive", "witness": Value::Null }),
                )),
            }
        }
        Command::Triangle { algebra, base, cochain, word_bound } => {
            let alg = load_algebra(algebra)?;
            let base = load_base(base)?;
            let beta = load_cochain(cochain, &alg, &base)?;
            let report = verify_triangle(&alg, &base, &beta, *word_bound, true)?;
            let details = json!({
                "h0_dim": report.h0_dim,
                "h0_matches_product": report.h0_matches_product,
                "isomorphism": report.isomorphism.as_ref().map(|m| rational_matrix(m)),
                "truncation_stable": report.stable,
                "failed_stage": report.failed_stage,
            });
            if report.passed {
                Ok((Verdict::Pass, details))
            } else {
                Ok((Verdict::Fail, details))
            }
        }
    }
}

/// The contraction identity on every fixed-polynomial-degree row
/// `n = 2..=bound`, checked as matrices over the ground field.
fn homotopy_rows_hold(alg: &FiniteAlgebra, bound: usize) -> bool {
    use deform_core::barcobar::{d_s, enumerate_words, splitting_homotopy, CobarWord};
    use deform_core::exact::SparseMatrix;

    let row_basis = |n: usize, k: usize| -> Vec<CobarWord> {
        if k == 0 || k > n {
            return Vec::new();
        }
        enumerate_words(alg, n, k as i32 - n as i32)
            .into_iter()
            .filter(|w| w.polydegree() == n)
            .collect()
    };
    let matrix_of = |dom: &[CobarWord], cod: &[CobarWord], split: bool| -> SparseMatrix {
        let index: std::collections::BTreeMap<&CobarWord, usize> =
            cod.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut mat = SparseMatrix::new(cod.len(), dom.len());
        for (c, w) in dom.iter().enumerate() {
            let image = if split { d_s(w, 1) } else { splitting_homotopy(w, 1) };
            for (w2, coeff) in image.terms() {
                mat.set(index[w2], c, coeff[0].clone());
            }
        }
        mat
    };
    for n in 2..=bound {
        for k in 1..=n {
            let dom = row_basis(n, k);
            if dom.is_empty() {
                continue;
            }
            let up = row_basis(n, k + 1);
            let down = row_basis(n, k.saturating_sub(1));
            let d_k = matrix_of(&dom, &up, true);
            let h_k = matrix_of(&dom, &down, false);
            let h_up = matrix_of(&up, &dom, false);
            let d_down = matrix_of(&down, &dom, true);
            let mut total = h_up.matmul(&d_k).expect("shapes align");
            for ((r, c), v) in d_down.matmul(&h_k).expect("shapes align").entries() {
                total.add_to(*r, *c, v);
            }
            if total != SparseMatrix::identity(dom.len()) {
                return false;
            }
        }
    }
    true
}
