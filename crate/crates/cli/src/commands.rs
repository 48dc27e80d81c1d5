use std::fs;
use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, Context};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::json;

use iwk_core::akashi::{akashi_series, bad_twist_scan, verify_char_element, ModuleJson, TorsionModuleData};
use iwk_core::crossed_product::{ore_left_test, ore_s_test, ore_sstar_test, ElementJson, FiniteLevelGroup, GroupJson, RepJson};
use iwk_core::euler_arith::{artin_check, artin_solve, chi_formula, ArtinDecomposition, FieldArithmeticData};
use iwk_core::iwasawa_series::{PadicSeries, SeriesJson};
use iwk_core::linalg::Matrix;
use iwk_core::lvalue::{check_corollaries, interpolate_valuation, ChiClaim, InterpolationInput};
use iwk_core::padic::{ExactScalar, ExtensionRing, PadicContext, PadicScalar, RingSpec};
use iwk_core::sampling::{self, SampleGroup};
use iwk_core::{RingElem, Scalar};

use crate::output::{classify, Failure, Report};
use crate::{BackendArg, Command, RunConfig};

pub type Outcome = Result<Report, Failure>;

pub fn run(command: &Command, cfg: &RunConfig) -> Outcome {
    match command {
        Command::Weierstrass { input } => weierstrass(&read_json(input)?, cfg),
        Command::OreTest { input } => ore_test(&read_json(input)?, cfg),
        Command::OreClosureProp { samples } => ore_closure(*samples, cfg),
        Command::Akashi { input } => akashi(&read_json(input)?, cfg),
        Command::EulerChar { input } => euler_char(&read_json(input)?, cfg),
        Command::VerifyTheorem36 { input } => verify(&read_json(input)?, cfg),
        Command::TwistScan { input, k_max } => twist_scan(&read_json(input)?, *k_max, cfg),
        Command::ChiArith { input } => chi_arith(&read_json(input)?),
        Command::ArtinCheck { input } => artin_check_cmd(&read_json(input)?),
        Command::ArtinSolve { input } => artin_solve_cmd(&read_json(input)?),
        Command::Interpolate { input } => interpolate(&read_json(input)?),
        Command::CheckMainConjecture { input, chi_claim } => {
            let claim: ChiClaim = chi_claim
                .parse()
                .map_err(|e| anyhow!("--chi-claim: {e}"))?;
            main_conjecture(&read_json(input)?, claim)
        }
        Command::PaperSuite { fixtures } => crate::suite::run(fixtures, cfg),
    }
}

/// Reads `path` ("-" for stdin) and deserializes it; serde's message names
/// the offending field and position.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).context("reading stdin")?
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn core<T>(r: iwk_core::Result<T>) -> Result<T, Failure> {
    r.map_err(classify)
}

fn default_ring(cfg: &RunConfig) -> Result<Arc<ExtensionRing>, Failure> {
    let ctx = core(PadicContext::new(cfg.p, cfg.precision))?;
    Ok(ExtensionRing::prime(ctx))
}

/// Rejects a `--backend` that contradicts what the subcommand needs.
fn require_backend(cfg: &RunConfig, needed: BackendArg, why: &str) -> Result<(), Failure> {
    match cfg.backend {
        Some(b) if b != needed => Err(Failure::Input(anyhow!("--backend: {why}"))),
        _ => Ok(()),
    }
}

fn weierstrass(input: &SeriesJson, cfg: &RunConfig) -> Outcome {
    require_backend(cfg, BackendArg::Padic, "Weierstrass preparation runs on the p-adic backend")?;
    let ring = default_ring(cfg)?;
    let f: PadicSeries = core(input.parse::<PadicScalar>(&ring, cfg.truncation))?;
    let w = core(f.weierstrass_prepare())?;
    Ok(Report::ok(w.summary()))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OreInput {
    pub group: GroupJson,
    pub element: ElementJson,
    #[serde(default)]
    pub ring: Option<RingSpec>,
}

fn ring_from(spec: &Option<RingSpec>, cfg: &RunConfig) -> Result<Arc<ExtensionRing>, Failure> {
    match spec {
        Some(s) => core(s.build()),
        None => default_ring(cfg),
    }
}

fn group_from(json: &GroupJson, cfg: &RunConfig) -> Result<Arc<FiniteLevelGroup>, Failure> {
    if json.p != cfg.p {
        return Err(Failure::Input(anyhow!("group.p = {} but --p = {}", json.p, cfg.p)));
    }
    Ok(Arc::new(core(json.build()).map_err(|e| match e {
        Failure::Input(e) => Failure::Input(e.context("group")),
        other => other,
    })?))
}

#[derive(Serialize)]
struct OreOutput {
    #[serde(rename = "in_S")]
    in_s: bool,
    #[serde(rename = "in_S_star")]
    in_s_star: bool,
    peeled: u32,
}

fn ore_test(input: &OreInput, cfg: &RunConfig) -> Outcome {
    require_backend(cfg, BackendArg::Rational, "Ore tests need the exact backend")?;
    let ring = ring_from(&input.ring, cfg)?;
    let group = group_from(&input.group, cfg)?;
    let f = core(input.element.parse::<ExactScalar>(&group, &ring, cfg.truncation))
        .map_err(|e| in_field(e, "element"))?;
    let in_s = core(ore_s_test(&f))?.in_s;
    let (in_s_star, peeled) = core(ore_sstar_test(&f))?;
    Ok(Report::ok(OreOutput { in_s, in_s_star, peeled }))
}

fn in_field(e: Failure, field: &str) -> Failure {
    match e {
        Failure::Input(e) => Failure::Input(e.context(field.to_string())),
        other => other,
    }
}

#[derive(Serialize, Default)]
struct ClosureOutput {
    samples: usize,
    seed: u64,
    /// Pairs with both factors in S.
    pairs_in_s: usize,
    closure_failures: usize,
    det_failures: usize,
    left_right_failures: usize,
    pass: bool,
}

/// Random pairs over every sample group in turn: S is closed under products,
/// the mod-p determinant is multiplicative and the left and right tests agree.
fn ore_closure(samples: usize, cfg: &RunConfig) -> Outcome {
    require_backend(cfg, BackendArg::Rational, "Ore tests need the exact backend")?;
    let ring = default_ring(cfg)?;
    let mut rng = sampling::rng(cfg.seed);
    let mut out = ClosureOutput {
        samples,
        seed: cfg.seed,
        ..Default::default()
    };
    for i in 0..samples {
        let kind = SampleGroup::ALL[i % SampleGroup::ALL.len()];
        let g = kind.build(cfg.p);
        let x = sampling::random_element(&mut rng, &g, &ring, 3, cfg.truncation);
        let y = sampling::random_element(&mut rng, &g, &ring, 3, cfg.truncation);
        let (rx, ry) = (core(ore_s_test(&x))?, core(ore_s_test(&y))?);
        let rxy = core(ore_s_test(&x.mul_ref(&y)))?;
        if rxy.det != rx.det.mul_ref(&ry.det) {
            out.det_failures += 1;
        }
        if rx.in_s && ry.in_s {
            out.pairs_in_s += 1;
            if !rxy.in_s {
                out.closure_failures += 1;
            }
        }
        if core(ore_left_test(&x))?.in_s != rx.in_s {
            out.left_right_failures += 1;
        }
    }
    out.pass = out.closure_failures == 0 && out.det_failures == 0 && out.left_right_failures == 0;
    let pass = out.pass;
    Ok(Report::check(out, pass))
}

/// Runs `body` on the module over the backend chosen by `--backend`
/// (rational unless told otherwise).
fn with_module<R>(
    input: &ModuleJson,
    cfg: &RunConfig,
    rational: impl FnOnce(TorsionModuleData<ExactScalar>) -> iwk_core::Result<R>,
    padic: impl FnOnce(TorsionModuleData<PadicScalar>) -> iwk_core::Result<R>,
) -> Result<R, Failure> {
    let ring = default_ring(cfg)?;
    match cfg.backend.unwrap_or(BackendArg::Rational) {
        BackendArg::Rational => core(input.parse::<ExactScalar>(&ring, cfg.truncation).and_then(rational)),
        BackendArg::Padic => core(input.parse::<PadicScalar>(&ring, cfg.truncation).and_then(padic)),
    }
}

fn akashi(input: &ModuleJson, cfg: &RunConfig) -> Outcome {
    fn go<S: Scalar>(m: TorsionModuleData<S>) -> iwk_core::Result<serde_json::Value> {
        let form = akashi_series(&m)?.canonical_form()?;
        Ok(json!({ "canonical_form": form, "display": form.to_string() }))
    }
    Ok(Report::ok(with_module(input, cfg, go, go)?))
}

fn euler_char(input: &ModuleJson, cfg: &RunConfig) -> Outcome {
    fn go<S: Scalar>(m: TorsionModuleData<S>) -> iwk_core::Result<serde_json::Value> {
        let degree = m.ring().degree();
        let chi = akashi_series(&m)?.euler_characteristic(degree)?;
        Ok(json!({ "euler_characteristic": chi, "m": degree }))
    }
    Ok(Report::ok(with_module(input, cfg, go, go)?))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyInput {
    pub group: GroupJson,
    /// Square matrix `F`; the module is `Lambda^r / Lambda^r F`.
    pub presentation: Vec<Vec<ElementJson>>,
    pub rep: RepJson,
    /// Pure `pi`-power exponents of the higher homology, degree 1 upward.
    #[serde(default)]
    pub higher: Vec<u32>,
    #[serde(default)]
    pub ring: Option<RingSpec>,
}

fn verify(input: &VerifyInput, cfg: &RunConfig) -> Outcome {
    require_backend(cfg, BackendArg::Rational, "the three-way check needs the exact backend")?;
    let ring = ring_from(&input.ring, cfg)?;
    let group = group_from(&input.group, cfg)?;
    let rows = input
        .presentation
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, x)| {
                    core(x.parse::<ExactScalar>(&group, &ring, cfg.truncation))
                        .map_err(|e| in_field(e, &format!("presentation[{i}][{j}]")))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let f = core(Matrix::from_rows(rows)).map_err(|e| in_field(e, "presentation"))?;
    if !f.is_square() || f.rows() == 0 {
        bail_input(format!("presentation must be a nonempty square matrix, got {}x{}", f.rows(), f.cols()))?;
    }
    let rho = core(input.rep.parse::<ExactScalar>(&group, &ring)).map_err(|e| in_field(e, "rep"))?;
    let report = core(verify_char_element(&f, &rho, &input.higher))?;
    let pass = report.agree && report.higher_consistent;
    Ok(Report::check(report, pass))
}

fn bail_input(msg: String) -> Result<(), Failure> {
    Err(Failure::Input(anyhow!(msg)))
}

fn twist_scan(input: &ModuleJson, k_max: u32, cfg: &RunConfig) -> Outcome {
    require_backend(cfg, BackendArg::Rational, "the twist scan needs the exact backend")?;
    let ring = default_ring(cfg)?;
    let m = core(input.parse::<ExactScalar>(&ring, cfg.truncation))?;
    let bad = core(bad_twist_scan(&m, k_max))?;
    let p = m.ring().p();
    let orders: Vec<u64> = bad.iter().map(|&k| p.pow(k)).collect();
    Ok(Report::ok(json!({ "k_max": k_max, "bad_k": bad, "bad_orders": orders })))
}

fn chi_arith(data: &FieldArithmeticData) -> Outcome {
    let e = core(chi_formula(data))?;
    Ok(Report::ok(json!({ "chi_exponent": e })))
}

fn artin_check_cmd(d: &ArtinDecomposition) -> Outcome {
    let holds = core(artin_check(d))?;
    Ok(Report::check(json!({ "holds": holds }), holds))
}

fn artin_solve_cmd(d: &ArtinDecomposition) -> Outcome {
    let e = core(artin_solve(d))?;
    Ok(Report::ok(json!({ "chi_exponent": e })))
}

fn interpolate(input: &InterpolationInput) -> Outcome {
    Ok(Report::ok(core(interpolate_valuation(input))?))
}

fn main_conjecture(input: &InterpolationInput, claim: ChiClaim) -> Outcome {
    let report = core(check_corollaries(input, claim))?;
    let pass = report.pass;
    Ok(Report::check(report, pass))
}
