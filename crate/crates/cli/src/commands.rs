use serde::Serialize;
use serde_json::{json, Value};

use projlattice::algebra::{
    check_pullback, element_lt, interpolate_pregap, pullback_projection, sandwich_pullback, AlgebraElement,
};
use projlattice::calkin::{calkin_demo, FamilyKind, FamilySpec};
use projlattice::io::from_json_str;
use projlattice::projorder::{
    check_witness, glb_criterion, glb_norm_check, join, join_span, leq, meet_nullspace, meet_spectral,
    nonzero_meet_check, separativity_witness,
};
use projlattice::sequences::{
    decreasing_equalizer_recursive, decreasing_equalizer_spectral, ee_inequality_check, gap_element,
    increasing_equalizer, ScheduleConfig,
};
use projlattice::verify::inputs::{
    EeInput, InterpolateInput, NormCheckInput, PairInput, ProjectionsInput, PullbackInput,
};
use projlattice::verify::{verify, VerifyConfig, MAX_DIM_CAP};
use projlattice::{Error, Projection, Result, ToleranceConfig};

use crate::{Cli, Command};

/// Oracle agreement threshold for meets and joins.
const ORACLE_TOL: f64 = 1e-8;

#[derive(Debug, Serialize)]
pub struct Violation {
    pub invariant: String,
    pub counterexample: Value,
}

#[derive(Debug)]
pub struct Outcome {
    pub result: Value,
    pub violations: Vec<Violation>,
}

/// Collects failed invariants against one input instance.
struct Checker<'a, T: Serialize> {
    instance: &'a T,
    violations: Vec<Violation>,
}

impl<'a, T: Serialize> Checker<'a, T> {
    fn new(instance: &'a T) -> Self {
        Self {
            instance,
            violations: Vec::new(),
        }
    }

    fn require(&mut self, ok: bool, invariant: &str) {
        if !ok {
            self.violations.push(Violation {
                invariant: invariant.into(),
                counterexample: to_value(self.instance),
            });
        }
    }

    fn finish(self, result: impl Serialize) -> Outcome {
        Outcome {
            result: to_value(&result),
            violations: self.violations,
        }
    }
}

fn to_value<T: Serialize + ?Sized>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn parse<T: serde::de::DeserializeOwned>(cli: &Cli) -> Result<T> {
    from_json_str(&cli.read_input()?)
}

fn nonempty(ps: &[Projection]) -> Result<()> {
    if ps.is_empty() {
        return Err(Error::Argument("\"projections\" must be nonempty".into()));
    }
    Ok(())
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let cfg = cli.tolerances()?;
    match cli.command {
        Command::Meet => meet_cmd(parse(cli)?, &cfg),
        Command::Join => join_cmd(parse(cli)?, &cfg),
        Command::GlbCheck => glb_cmd(parse(cli)?, &cfg),
        Command::NormCheck => norm_cmd(parse(cli)?, &cfg),
        Command::SepWitness => sep_cmd(parse(cli)?, &cfg),
        Command::Gap => gap_cmd(parse(cli)?, &cfg),
        Command::Decreasing => decreasing_cmd(parse(cli)?, &cfg),
        Command::Increasing => increasing_cmd(parse(cli)?, &cfg),
        Command::EeCheck => ee_cmd(parse(cli)?, &cfg),
        Command::Pullback => pullback_cmd(parse(cli)?, &cfg),
        Command::Interpolate => interpolate_cmd(parse(cli)?, &cfg),
        Command::CalkinDemo => calkin_cmd(cli, &cfg),
        Command::Verify => verify_cmd(cli, &cfg),
    }
}

fn meet_cmd(input: ProjectionsInput, cfg: &ToleranceConfig) -> Result<Outcome> {
    nonempty(&input.projections)?;
    let spectral = meet_spectral(&input.projections, cfg)?;
    let oracle = meet_nullspace(&input.projections, cfg)?;
    let distance = spectral.distance(&oracle);
    let mut c = Checker::new(&input);
    c.require(distance <= ORACLE_TOL, "meet_spectral = meet_nullspace");
    Ok(c.finish(json!({
        "meet": spectral,
        "rank": spectral.rank(),
        "oracle_distance": distance,
    })))
}

fn join_cmd(input: ProjectionsInput, cfg: &ToleranceConfig) -> Result<Outcome> {
    nonempty(&input.projections)?;
    let dual = join(&input.projections, cfg)?;
    let oracle = join_span(&input.projections, cfg)?;
    let distance = dual.distance(&oracle);
    let mut c = Checker::new(&input);
    c.require(distance <= ORACLE_TOL, "join by duality = span of ranges");
    Ok(c.finish(json!({
        "join": dual,
        "rank": dual.rank(),
        "oracle_distance": distance,
    })))
}

fn glb_cmd(input: ProjectionsInput, cfg: &ToleranceConfig) -> Result<Outcome> {
    nonempty(&input.projections)?;
    let ps = &input.projections;
    let rep = glb_criterion(ps, cfg)?;
    let oracle_distance = rep.meet.distance(&meet_nullspace(ps, cfg)?);
    let pair = if ps.len() == 2 {
        Some(nonzero_meet_check(&ps[0], &ps[1], cfg)?)
    } else {
        None
    };
    let mut c = Checker::new(&input);
    c.require(rep.criterion_holds, "sup sigma(T*T) \\ {1} < 1");
    c.require(rep.norm_gap < 1.0 - cfg.order_tol, "||T - meet|| < 1");
    c.require(oracle_distance <= ORACLE_TOL, "spectral meet = null-space meet");
    if let Some(p) = &pair {
        c.require(p.agrees, "||PQ|| = 1 exactly when the meet is nonzero");
    }
    Ok(c.finish(json!({
        "sup_sigma_excl_one": rep.sup_sigma_excl_one,
        "criterion_holds": rep.criterion_holds,
        "norm_gap": rep.norm_gap,
        "meet": rep.meet,
        "oracle_distance": oracle_distance,
        "pair": pair,
    })))
}

fn norm_cmd(input: NormCheckInput, cfg: &ToleranceConfig) -> Result<Outcome> {
    nonempty(&input.projections)?;
    let chk = glb_norm_check(&input.projections, &input.r, cfg)?;
    let oracle = meet_nullspace(&input.projections, cfg)?;
    let is_meet = input.r.distance(&oracle) <= ORACLE_TOL;
    let mut c = Checker::new(&input);
    c.require(chk.is_glb == is_meet, "norm test agrees with the meet oracle");
    Ok(c.finish(json!({
        "is_glb": chk.is_glb,
        "below_all": chk.below_all,
        "norm": chk.norm,
        "oracle_is_meet": is_meet,
    })))
}

fn sep_cmd(input: PairInput, cfg: &ToleranceConfig) -> Result<Outcome> {
    let w = separativity_witness(&input.p, &input.q, cfg)?;
    let chk = check_witness(&input.p, &input.q, &w, cfg)?;
    let mut c = Checker::new(&input);
    c.require(chk.nonzero, "R != 0");
    c.require(chk.below_p, "R <= P");
    c.require(chk.qr_within_bound, "||QR|| <= sqrt(1 - ||Q^perp P||^2 / 2)");
    c.require(chk.meet_with_q_zero, "R meet Q = 0");
    Ok(c.finish(json!({ "witness": w, "checks": chk })))
}

fn gap_cmd(input: PairInput, cfg: &ToleranceConfig) -> Result<Outcome> {
    let cert = gap_element(&input.p, &input.q, cfg)?;
    let mut c = Checker::new(&input);
    c.require(cert.checks.all(), "gap certificate");
    Ok(c.finish(&cert))
}

fn is_chain(qs: &[Projection], increasing: bool, cfg: &ToleranceConfig) -> Result<bool> {
    for w in qs.windows(2) {
        let ok = if increasing {
            leq(&w[0], &w[1], cfg)?
        } else {
            leq(&w[1], &w[0], cfg)?
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

fn decreasing_cmd(input: ProjectionsInput, cfg: &ToleranceConfig) -> Result<Outcome> {
    nonempty(&input.projections)?;
    let ps = &input.projections;
    let want = meet_nullspace(ps, cfg)?;
    let recursive = decreasing_equalizer_recursive(ps, cfg)?;
    let spectral = decreasing_equalizer_spectral(ps, &ScheduleConfig::default(), cfg)?;
    let mut c = Checker::new(&input);
    c.require(is_chain(&recursive, false, cfg)?, "recursive equalizer is decreasing");
    c.require(
        meet_nullspace(&recursive, cfg)?.distance(&want) <= ORACLE_TOL,
        "recursive equalizer keeps the meet",
    );
    c.require(is_chain(&spectral.decreasing, false, cfg)?, "spectral equalizer is decreasing");
    c.require(
        meet_nullspace(&spectral.decreasing, cfg)?.distance(&want) <= ORACLE_TOL,
        "spectral equalizer keeps the meet",
    );
    c.require(spectral.chain.holds(ORACLE_TOL), "||P^perp_m Q_n|| <= 1/(n+1)^2");
    Ok(c.finish(json!({ "recursive": recursive, "spectral": spectral })))
}

fn increasing_cmd(input: ProjectionsInput, cfg: &ToleranceConfig) -> Result<Outcome> {
    nonempty(&input.projections)?;
    let qs = increasing_equalizer(&input.projections, cfg)?;
    let distance = join_span(&qs, cfg)?.distance(&join_span(&input.projections, cfg)?);
    let mut c = Checker::new(&input);
    c.require(is_chain(&qs, true, cfg)?, "increasing equalizer is increasing");
    c.require(distance <= ORACLE_TOL, "increasing equalizer keeps the join");
    Ok(c.finish(json!({ "increasing": qs, "join_distance": distance })))
}

fn ee_cmd(input: EeInput, cfg: &ToleranceConfig) -> Result<Outcome> {
    let r = ee_inequality_check(&input.s_op, &input.p, input.s, input.t, cfg)?;
    let mut c = Checker::new(&input);
    c.require(r.holds, "EE inequality");
    Ok(c.finish(r))
}

fn pullback_cmd(input: PullbackInput, cfg: &ToleranceConfig) -> Result<Outcome> {
    let m = input.morphism()?;
    let (result, lower) = match &input.r {
        Some(r) => (sandwich_pullback(&m, &input.q, r, &input.p, cfg)?, r.clone()),
        None => (
            pullback_projection(&m, &input.q, &input.p, cfg)?,
            AlgebraElement::zero(m.source()),
        ),
    };
    let chk = check_pullback(&m, &input.q, &result, &lower, &input.p, cfg)?;
    let mut c = Checker::new(&input);
    c.require(chk.holds, "pi(Q) = q exactly with R <= Q <= P");
    Ok(c.finish(json!({ "Q": result, "checks": chk })))
}

fn interpolate_cmd(input: InterpolateInput, cfg: &ToleranceConfig) -> Result<Outcome> {
    let m = input.morphism()?;
    let out = interpolate_pregap(&m, &input.lower, &input.upper, cfg)?;
    let img = m.apply(&out.element)?;
    let mut c = Checker::new(&input);
    if !out.degenerate {
        let mut ok = true;
        for p in &input.lower {
            ok &= element_lt(p, &img, cfg)?;
        }
        for q in &input.upper {
            ok &= element_lt(&img, q, cfg)?;
        }
        c.require(ok, "interpolant lies strictly between the families");
    }
    Ok(c.finish(json!({ "interpolation": out, "image": img })))
}

fn calkin_cmd(cli: &Cli, cfg: &ToleranceConfig) -> Result<Outcome> {
    let (spec, base) = match (&cli.input, cli.family) {
        (Some(path), None) => {
            let spec: FamilySpec = from_json_str(&cli.read_input()?)?;
            (spec, path.parent().map(|p| p.to_path_buf()))
        }
        (None, Some(f)) if FamilyKind::from(f) != FamilyKind::Custom => (
            FamilySpec {
                family: f.into(),
                n: cli.truncation,
                custom_blocks_path: None,
            },
            None,
        ),
        (None, Some(_)) => {
            return Err(Error::Config(
                "custom families are read from a family spec passed with --in".into(),
            ))
        }
        (Some(_), Some(_)) => return Err(Error::Config("give either --family or --in, not both".into())),
        (None, None) => return Err(Error::Config("calkin-demo needs --family or --in".into())),
    };
    let (p, q) = spec.load(base.as_deref())?;
    let report = calkin_demo(&p, &q, cfg)?;
    Ok(Outcome {
        result: json!({ "family": spec, "report": report }),
        violations: Vec::new(),
    })
}

fn verify_cmd(cli: &Cli, cfg: &ToleranceConfig) -> Result<Outcome> {
    let seed = cli
        .seed
        .ok_or_else(|| Error::Config("verify needs --seed for reproducibility".into()))?;
    if cli.max_dim > MAX_DIM_CAP {
        return Err(Error::Config(format!("--max-dim is capped at {MAX_DIM_CAP}")));
    }
    let config = VerifyConfig {
        seed,
        count: cli.count,
        max_dim: cli.max_dim,
        tolerances: *cfg,
    };
    let report = verify(&config)?;
    let violations = report
        .suites
        .iter()
        .filter_map(|s| {
            s.counterexample.as_ref().map(|c| Violation {
                invariant: format!("{}: {}", s.name, c.violated),
                counterexample: c.instance.clone(),
            })
        })
        .collect();
    Ok(Outcome {
        result: to_value(&report),
        violations,
    })
}
