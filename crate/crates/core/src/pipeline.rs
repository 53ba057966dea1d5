//! Batch runs over a labeling: command parsing, dependency checks, JSON
//! reports, and the golden structure-constant file.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::{is_valid_radicand, prime_pool, Field, QuadExt, Rational};
use crate::fano::{point_index, FanoLabeling, POINT_NAMES};
use crate::lie::{identify_type, roots, AlgebraJson, JacobiMode, ScAlgebra};
use crate::lts::{
    d6a1_structure, embedding_roundtrip, faulkner_data, grade_at_point, lts_extract, verify_formula_star, Gauge, GiftData, GradedE7,
    LieTripleSystem, Perturbation,
};
use crate::manivel::{assemble, line_subalgebra_check, E7Assembly, SolveOptions};
use crate::tensor_split::trace_route_check;
use crate::{Error, Result};

const LTS_RANDOM_TRIPLES: usize = 1000;
const PI_CHECKS: usize = 500;
const TYPE_SEEDS: u64 = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Build,
    VerifyJacobi,
    VerifyKilling,
    VerifyRoots,
    /// Dimensions of all intertwiner spaces used by the assembly.
    Schur,
    LineSubalgebras,
    Grade(usize),
    Lts,
    Embedding,
    Gift,
    FormulaStar,
    D6A1,
    BaseChange(i64),
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::Validate => write!(f, "validate"),
            Command::Build => write!(f, "build"),
            Command::VerifyJacobi => write!(f, "verify-jacobi"),
            Command::VerifyKilling => write!(f, "verify-killing"),
            Command::VerifyRoots => write!(f, "verify-roots"),
            Command::Schur => write!(f, "schur"),
            Command::LineSubalgebras => write!(f, "line-subalgebras"),
            Command::Grade(p) => write!(f, "grade({})", POINT_NAMES[*p]),
            Command::Lts => write!(f, "lts"),
            Command::Embedding => write!(f, "embedding"),
            Command::Gift => write!(f, "gift"),
            Command::FormulaStar => write!(f, "formula-star"),
            Command::D6A1 => write!(f, "d6a1"),
            Command::BaseChange(d) => write!(f, "base-change({d})"),
        }
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        let arg = |name: &str| s.strip_prefix(name).and_then(|r| r.strip_prefix('(')).and_then(|r| r.strip_suffix(')')).map(str::trim);
        if let Some(p) = arg("grade") {
            return point_index(p).map(Command::Grade).ok_or_else(|| format!("unknown point {p:?}"));
        }
        if let Some(d) = arg("base-change") {
            let d: i64 = d.parse().map_err(|_| format!("bad radicand {d:?}"))?;
            if !is_valid_radicand(d) {
                return Err(format!("{d} is not a squarefree radicand"));
            }
            return Ok(Command::BaseChange(d));
        }
        Ok(match s {
            "validate" => Command::Validate,
            "build" => Command::Build,
            "verify-jacobi" => Command::VerifyJacobi,
            "verify-killing" => Command::VerifyKilling,
            "verify-roots" => Command::VerifyRoots,
            "schur" => Command::Schur,
            "line-subalgebras" => Command::LineSubalgebras,
            "lts" => Command::Lts,
            "embedding" => Command::Embedding,
            "gift" => Command::Gift,
            "formula-star" => Command::FormulaStar,
            "d6a1" => Command::D6A1,
            other => return Err(format!("unknown command {other:?}")),
        })
    }
}

/// The default command list for a labeling.
pub fn default_commands(l: &FanoLabeling) -> Vec<Command> {
    use Command::*;
    let split = l.split_points();
    let mut c = vec![Validate, Build, VerifyJacobi, VerifyKilling, Schur];
    let odd = |p: usize| vec![Grade(p), Lts, Embedding, Gift, FormulaStar];
    if split.len() == 7 {
        c.extend([VerifyRoots, LineSubalgebras]);
        c.extend(odd(0));
        c.push(D6A1);
    } else {
        if let Some(&p) = split.first() {
            c.extend(odd(p));
        }
        c.extend([BaseChange(-1), VerifyRoots, LineSubalgebras, Grade(split.first().copied().unwrap_or(0)), D6A1]);
    }
    c
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    labeling_path: String,
    #[serde(default)]
    commands: Option<Vec<String>>,
    #[serde(default)]
    output_dir: Option<String>,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    prime_count: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub labeling_path: PathBuf,
    pub labeling: FanoLabeling,
    pub commands: Vec<Command>,
    pub output_dir: PathBuf,
    pub seed: u64,
    pub prime_count: usize,
}

fn schema(field: impl Into<String>, msg: impl Into<String>) -> Error {
    Error::Schema { field: field.into(), msg: msg.into() }
}

impl PipelineConfig {
    /// Read a config file, or a bare labeling file which gets the default pipeline.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let raw: Value = serde_json::from_str(&text).map_err(|e| schema("config", e.to_string()))?;
        let base = path.parent().unwrap_or(Path::new("."));
        if raw.get("points").is_some() {
            let labeling = FanoLabeling::from_json(&text)?;
            let commands = default_commands(&labeling);
            return Ok(PipelineConfig {
                labeling_path: path.to_path_buf(),
                labeling,
                commands,
                output_dir: PathBuf::from("e7forge-out"),
                seed: 1,
                prime_count: 3,
            });
        }
        let file: ConfigFile = serde_json::from_value(raw).map_err(|e| schema("config", e.to_string()))?;
        let labeling_path = base.join(&file.labeling_path);
        let ltext = std::fs::read_to_string(&labeling_path).map_err(|e| schema("labeling_path", format!("{}: {e}", labeling_path.display())))?;
        let labeling = FanoLabeling::from_json(&ltext)?;
        let commands = match file.commands {
            None => default_commands(&labeling),
            Some(list) => list
                .iter()
                .enumerate()
                .map(|(i, c)| c.parse::<Command>().map_err(|m| schema(format!("commands[{i}]"), m)))
                .collect::<Result<Vec<_>>>()?,
        };
        let cfg = PipelineConfig {
            labeling_path,
            labeling,
            commands,
            output_dir: file.output_dir.map(|o| base.join(o)).unwrap_or_else(|| PathBuf::from("e7forge-out")),
            seed: file.seed.unwrap_or(1),
            prime_count: file.prime_count.unwrap_or(3),
        };
        cfg.check_order()?;
        Ok(cfg)
    }

    pub fn from_labeling(labeling: FanoLabeling, seed: u64) -> Self {
        let commands = default_commands(&labeling);
        PipelineConfig { labeling_path: PathBuf::new(), labeling, commands, output_dir: PathBuf::from("e7forge-out"), seed, prime_count: 3 }
    }

    pub fn primes(&self) -> Vec<u64> {
        prime_pool(self.prime_count.max(1))
    }

    /// Commands must come after what they consume.
    pub fn check_order(&self) -> Result<()> {
        let (mut built, mut changed, mut graded, mut lts, mut gift) = (false, false, false, false, false);
        for (i, c) in self.commands.iter().enumerate() {
            let need = |ok: bool, what: &str| if ok { Ok(()) } else { Err(schema(format!("commands[{i}]"), format!("{c} needs {what} earlier"))) };
            match c {
                Command::Validate => {}
                Command::Build => {
                    if changed {
                        return Err(schema(format!("commands[{i}]"), "build after base-change"));
                    }
                    built = true;
                }
                Command::VerifyJacobi | Command::VerifyKilling | Command::VerifyRoots | Command::Schur | Command::LineSubalgebras => need(built, "build")?,
                Command::Grade(_) => {
                    need(built, "build")?;
                    graded = true;
                    lts = false;
                    gift = false;
                }
                Command::Lts => {
                    need(graded, "grade")?;
                    lts = true;
                }
                Command::Gift => {
                    need(graded, "grade")?;
                    gift = true;
                }
                Command::Embedding => need(lts, "lts")?,
                Command::FormulaStar => {
                    need(lts, "lts")?;
                    need(gift, "gift")?;
                }
                Command::D6A1 => need(graded, "grade")?,
                Command::BaseChange(_) => {
                    need(built, "build")?;
                    if changed {
                        return Err(schema(format!("commands[{i}]"), "only one base-change per run"));
                    }
                    changed = true;
                    (graded, lts, gift) = (false, false, false);
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct GaugeValue {
    pub t: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub check: String,
    pub status: Status,
    pub witnesses: Vec<String>,
    pub gauge: Option<GaugeValue>,
    pub dims: BTreeMap<String, Value>,
    pub details: Value,
    pub field: String,
    pub seed: u64,
    pub primes: Vec<u64>,
    /// Wall-clock data; not part of the deterministic content.
    pub metadata: Value,
    #[serde(skip)]
    config_failure: bool,
}

impl Report {
    fn new(check: String) -> Self {
        Report {
            check,
            status: Status::Pass,
            witnesses: Vec::new(),
            gauge: None,
            dims: BTreeMap::new(),
            details: Value::Null,
            field: String::new(),
            seed: 0,
            primes: Vec::new(),
            metadata: Value::Null,
            config_failure: false,
        }
    }

    fn fail(&mut self, witness: impl Into<String>) {
        self.status = Status::Fail;
        self.witnesses.push(witness.into());
    }

    fn check_that(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        if !ok {
            self.fail(witness());
        }
    }

    fn dim(&mut self, k: &str, v: impl Serialize) {
        self.dims.insert(k.to_string(), serde_json::to_value(v).expect("serializable"));
    }

    fn error(&mut self, e: &Error) {
        self.config_failure = matches!(e, Error::Schema { .. } | Error::Io(_) | Error::LabelingRejected(_) | Error::UnknownLine(_) | Error::PairingUnavailable(..));
        self.fail(e.to_string());
    }

    /// The report with the metadata block removed.
    pub fn content(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("serializable");
        v.as_object_mut().expect("report is an object").remove("metadata");
        v
    }
}

struct Stage<F: Field> {
    asm: Option<E7Assembly<F>>,
    graded: Option<GradedE7<F>>,
    lts: Option<LieTripleSystem<F>>,
    gift: Option<GiftData<F>>,
    field: String,
}

impl<F: Field> Stage<F> {
    fn empty(field: String) -> Self {
        Stage { asm: None, graded: None, lts: None, gift: None, field }
    }
}

#[derive(Default)]
struct SummaryFields {
    dim: Option<usize>,
    roots: Option<usize>,
    kind: Option<String>,
    formula_star: Option<String>,
    gauge_t: Option<String>,
}

fn missing(r: &mut Report, what: &str) {
    r.status = Status::Skipped;
    r.witnesses.push(format!("skipped: {what} unavailable after an earlier failure"));
}

fn step<F: Field>(st: &mut Stage<F>, cmd: &Command, cfg: &PipelineConfig, primes: &[u64], sum: &mut SummaryFields, r: &mut Report) {
    let seed = cfg.seed;
    match cmd {
        Command::Validate => {
            let v = cfg.labeling.validate();
            for x in &v.violations {
                let at = x.line.clone().or_else(|| x.point.clone()).unwrap_or_default();
                r.fail(format!("{} at {at}: {}", x.rule, x.detail));
            }
            r.config_failure = !v.accepted();
            r.details = serde_json::to_value(&v).expect("serializable");
        }
        Command::Build => unreachable!("build runs on the rational stage"),
        Command::BaseChange(_) => unreachable!("handled by the driver"),
        _ => {}
    }
    if matches!(cmd, Command::Validate) {
        return;
    }
    let Some(a) = st.asm.as_ref() else {
        return missing(r, "assembly");
    };
    match cmd {
        Command::VerifyJacobi => {
            let j = a.algebra.jacobi_check(JacobiMode::Full);
            r.dim("triples", j.triples_checked);
            if let Some(((i, k, l), res)) = &j.witness {
                let n = a.algebra.names();
                r.fail(format!("J({}, {}, {}) has {} nonzero coordinates", n[*i], n[*k], n[*l], res.len()));
            }
        }
        Command::VerifyKilling => {
            let k = a.algebra.killing(primes);
            r.dim("rank", k.rank);
            r.details = json!({ "certificate": k.certificate });
            r.check_that(k.nondegenerate(), || format!("Killing form rank {} < {}", k.rank, a.algebra.dim()));
        }
        Command::VerifyRoots => match roots(&a.algebra, &a.cartan()) {
            Err(e) => r.error(&e),
            Ok(rd) => {
                r.dim("roots", rd.roots.len());
                r.dim("rank", rd.rank());
                let mut labels = Vec::new();
                let mut first = None;
                for s in seed..seed + TYPE_SEEDS {
                    match identify_type(&rd, s) {
                        Ok(t) => {
                            labels.push(t.label.clone());
                            first.get_or_insert(t);
                        }
                        Err(e) => labels.push(format!("error: {e}")),
                    }
                }
                let label = labels[0].clone();
                r.check_that(rd.roots.len() == 126, || format!("{} roots", rd.roots.len()));
                r.check_that(labels.iter().all(|l| *l == label), || format!("type unstable across functionals: {labels:?}"));
                r.check_that(label == "E7", || format!("type {label}"));
                if let Some(t) = first {
                    r.details = json!({ "type": t.label, "labels_by_seed": labels, "cartan_matrix": t.cartan_matrix, "positive_roots": t.positive_roots });
                }
                sum.roots = Some(rd.roots.len());
                sum.kind = Some(label);
            }
        },
        Command::Schur => {
            let dims = &a.intertwiners.dims;
            r.dim("spaces", dims.len());
            for (label, d) in dims {
                r.check_that(*d == 1, || format!("{label} has dimension {d}"));
            }
            r.check_that(dims.len() == 49, || format!("{} spaces, expected 49", dims.len()));
            match trace_route_check(&a.plane, &a.modules, &a.intertwiners) {
                Ok(routes) => {
                    for t in routes.iter().filter(|t| !t.ok()) {
                        r.fail(format!("L{}xL{}: trace factorization fails {t:?}", t.alpha, t.beta));
                    }
                    r.dim("trace_routes", routes.len());
                    r.details = json!({ "dims": dims, "trace_routes": routes });
                }
                Err(e) => {
                    r.fail(e.to_string());
                    r.details = json!({ "dims": dims });
                }
            }
        }
        Command::LineSubalgebras => {
            let reps: Vec<_> = (0..7).map(|al| line_subalgebra_check(a, al, seed)).collect();
            for rep in &reps {
                for f in &rep.failures {
                    r.fail(format!("L{}: {f}", rep.line));
                }
            }
            r.details = serde_json::to_value(&reps).expect("serializable");
        }
        Command::Grade(p) => {
            st.lts = None;
            st.gift = None;
            match grade_at_point(a, *p) {
                Ok(g) => {
                    r.dim("layers", g.dims());
                    st.graded = Some(g);
                }
                Err(e) => {
                    st.graded = None;
                    r.error(&e);
                }
            }
        }
        Command::Lts => {
            let Some(g) = st.graded.as_ref() else { return missing(r, "grading") };
            match lts_extract(g, seed, LTS_RANDOM_TRIPLES) {
                Ok(t) => {
                    r.dim("w", crate::lts::W_DIM);
                    r.dim("span", t.span_dim());
                    let ax = &t.axioms;
                    r.check_that(ax.diagonal_witness.is_none(), || format!("D(w{0}, w{0}) != 0", ax.diagonal_witness.unwrap()));
                    r.check_that(ax.cyclic_witness.is_none(), || format!("cyclic rule fails on {:?}", ax.cyclic_witness.unwrap()));
                    r.check_that(ax.derivation_witness.is_none(), || format!("derivation rule fails on {:?}", ax.derivation_witness.unwrap()));
                    r.check_that(ax.random_witness.is_none(), || format!("derivation rule fails on random sample {}", ax.random_witness.unwrap()));
                    r.details = serde_json::to_value(ax).expect("serializable");
                    st.lts = Some(t);
                }
                Err(e) => r.error(&e),
            }
        }
        Command::Embedding => {
            let (Some(t), Some(g)) = (st.lts.as_ref(), st.graded.as_ref()) else { return missing(r, "triple system") };
            match embedding_roundtrip(t, a, g, primes) {
                Ok(e) => {
                    r.dim("span", e.span_dim);
                    r.dim("embedding", e.dim);
                    r.dim("image_rank", e.image_rank);
                    if !e.ok() {
                        r.fail(format!("embedding roundtrip: {e:?}"));
                    }
                    r.details = serde_json::to_value(&e).expect("serializable");
                }
                Err(e) => r.error(&e),
            }
        }
        Command::Gift => {
            let Some(g) = st.graded.as_ref() else { return missing(r, "grading") };
            match faulkner_data(g, seed, PI_CHECKS, primes) {
                Ok(gd) => {
                    r.dim("pairing_rank", gd.pairing_rank);
                    r.dim("pi_generators", gd.generator_rank);
                    r.check_that(gd.antisymmetric, || "pairing is not antisymmetric".into());
                    r.check_that(gd.generator_rank == 1024, || format!("rank-one generators span {}", gd.generator_rank));
                    r.check_that(gd.pi_witness.is_none(), || format!("pi disagrees with the ternary product on sample {}", gd.pi_witness.unwrap()));
                    r.details = json!({
                        "antisymmetric": gd.antisymmetric,
                        "generator_certificate": gd.generator_certificate,
                        "pi_checks": gd.pi_checks,
                        "hermitian_sign": gd.hermitian,
                    });
                    st.gift = Some(gd);
                }
                Err(e) => r.error(&e),
            }
        }
        Command::FormulaStar => {
            let (Some(t), Some(gd)) = (st.lts.as_ref(), st.gift.as_ref()) else { return missing(r, "triple system or gift data") };
            match verify_formula_star(t, gd, Perturbation::None, Gauge::Solve) {
                Err(e) => {
                    sum.formula_star = Some("failed".into());
                    r.error(&e);
                }
                Ok(rep) => {
                    let tv = F::from_rational(&rep.gauge_t.parse::<Rational>().unwrap_or_else(|_| Rational::from(0)), t.desc());
                    let mut perturbed = Vec::new();
                    for p in [Perturbation::DoublePi, Perturbation::NegatePhi] {
                        let fixed = match tv.clone() {
                            Ok(v) => verify_formula_star(t, gd, p, Gauge::Fixed(v)),
                            Err(e) => Err(e.into()),
                        };
                        let resolved = verify_formula_star(t, gd, p, Gauge::Solve);
                        match &fixed {
                            Ok(_) => r.fail(format!("{p:?} passes at t = {}", rep.gauge_t)),
                            Err(e) => r.witnesses.push(format!("{p:?}: {e}")),
                        }
                        let show = |x: &Result<crate::lts::FormulaStarReport>| match x {
                            Ok(v) => json!({ "holds": true, "t": v.gauge_t }),
                            Err(e) => json!({ "holds": false, "error": e.to_string() }),
                        };
                        perturbed.push(json!({ "perturbation": p, "fixed_gauge": show(&fixed), "resolved_gauge": show(&resolved) }));
                    }
                    r.check_that(rep.diagonal_zero, || "u = v does not give zero".into());
                    r.dim("pairs", rep.pairs_checked);
                    r.gauge = Some(GaugeValue { t: rep.gauge_t.clone() });
                    r.details = json!({ "probe": rep.probe, "perturbations": perturbed });
                    sum.formula_star = Some(if r.status == Status::Pass { "exact".into() } else { "failed".into() });
                    sum.gauge_t = Some(rep.gauge_t);
                }
            }
        }
        Command::D6A1 => {
            let Some(g) = st.graded.as_ref() else { return missing(r, "grading") };
            match d6a1_structure(a, g, primes, seed) {
                Ok(d) => {
                    r.dim("even", d.even_dim);
                    r.dim("d6", d.complement_dim);
                    r.dim("weights", d.distinct_weights);
                    if !d.ok() {
                        r.fail(format!("structure check: {d:?}"));
                    }
                    r.details = serde_json::to_value(&d).expect("serializable");
                }
                Err(e) => r.error(&e),
            }
        }
        Command::Validate | Command::Build | Command::BaseChange(_) => unreachable!(),
    }
}

#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub reports: Vec<Report>,
    pub summary: Value,
}

/// Run the configured commands; no files are written.
pub fn execute(cfg: &PipelineConfig) -> RunOutcome {
    let primes = cfg.primes();
    let mut q: Stage<Rational> = Stage::empty("Q".into());
    let mut ext: Option<Stage<QuadExt>> = None;
    let mut sum = SummaryFields::default();
    let mut reports = Vec::new();
    for cmd in &cfg.commands {
        let start = Instant::now();
        let mut r = Report::new(cmd.to_string());
        match cmd {
            Command::Build => match assemble::<Rational>(&cfg.labeling, &(), &SolveOptions::standard(cfg.seed)) {
                Ok(a) => {
                    r.dim("dim", a.algebra.dim());
                    r.dim("constants", a.constants.values.len());
                    r.check_that(a.jacobi.passed(), || "assembly Jacobi sweep failed".into());
                    r.details = json!({ "gauge": a.gauge, "constants": a.constants.table() });
                    sum.dim = Some(a.algebra.dim());
                    q.asm = Some(a);
                }
                Err(e) => r.error(&e),
            },
            Command::BaseChange(d) => {
                let mut st = Stage::empty(format!("Q(sqrt({d}))"));
                match q.asm.as_ref() {
                    Some(a) => {
                        st.asm = Some(a.base_change(*d));
                        r.dim("dim", a.algebra.dim());
                    }
                    None => missing(&mut r, "assembly"),
                }
                ext = Some(st);
            }
            _ => match ext.as_mut() {
                Some(st) => step(st, cmd, cfg, &primes, &mut sum, &mut r),
                None => step(&mut q, cmd, cfg, &primes, &mut sum, &mut r),
            },
        }
        r.field = ext.as_ref().map_or(q.field.clone(), |s| s.field.clone());
        r.seed = cfg.seed;
        r.primes = primes.clone();
        r.metadata = json!({ "elapsed_ms": start.elapsed().as_millis() as u64 });
        log::info!("{}: {:?} in {:?}", r.check, r.status, start.elapsed());
        reports.push(r);
    }
    let exit_code = if reports.iter().any(|r| r.config_failure) {
        1
    } else if reports.iter().any(|r| r.status != Status::Pass) {
        2
    } else {
        0
    };
    let checks: Vec<Value> = reports.iter().map(|r| json!({ "check": r.check, "status": r.status })).collect();
    let summary = json!({
        "check": "summary",
        "dim": sum.dim,
        "roots": sum.roots,
        "type": sum.kind,
        "formula_star": sum.formula_star,
        "gauge": sum.gauge_t.map(|t| json!({ "t": t })),
        "checks": checks,
        "exit_code": exit_code,
        "seed": cfg.seed,
        "primes": primes,
    });
    RunOutcome { exit_code, reports, summary }
}

fn file_stem(check: &str) -> String {
    check.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' }).collect::<String>().trim_matches('_').to_string()
}

/// Sorted-key, pretty JSON text with a trailing newline.
pub fn canonical_json(v: &impl Serialize) -> String {
    let v: Value = serde_json::to_value(v).expect("serializable");
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

/// Write one file per report plus `summary.json`.
pub fn write_outputs(out: &RunOutcome, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    for (i, r) in out.reports.iter().enumerate() {
        std::fs::write(dir.join(format!("{i:02}-{}.json", file_stem(&r.check))), canonical_json(r))?;
    }
    std::fs::write(dir.join("summary.json"), canonical_json(&out.summary))?;
    Ok(())
}

pub fn run(cfg: &PipelineConfig) -> Result<RunOutcome> {
    let out = execute(cfg);
    write_outputs(&out, &cfg.output_dir)?;
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct GoldenFile {
    format: String,
    field: String,
    seed: u64,
    algebra: AlgebraJson,
    constants: BTreeMap<String, String>,
}

const GOLDEN_FORMAT: &str = "e7forge-golden-1";

pub fn golden_json(a: &E7Assembly<Rational>, seed: u64) -> String {
    canonical_json(&GoldenFile { format: GOLDEN_FORMAT.into(), field: "Q".into(), seed, algebra: a.algebra.to_json(), constants: a.constants.table() })
}

pub fn emit_golden(a: &E7Assembly<Rational>, seed: u64, path: &Path) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, golden_json(a, seed))?;
    Ok(())
}

/// Parse a golden file back into an algebra and its constants table.
pub fn load_golden(text: &str) -> Result<(ScAlgebra<Rational>, BTreeMap<String, String>)> {
    let g: GoldenFile = serde_json::from_str(text).map_err(|e| schema("golden", e.to_string()))?;
    if g.format != GOLDEN_FORMAT {
        return Err(schema("format", format!("unsupported {:?}", g.format)));
    }
    if g.field != "Q" {
        return Err(schema("field", format!("unsupported {:?}", g.field)));
    }
    Ok((ScAlgebra::from_json(&g.algebra)?, g.constants))
}

/// Build the labeling of a config and write its golden file.
pub fn golden_for_config(cfg: &PipelineConfig, path: &Path) -> Result<()> {
    let a = assemble::<Rational>(&cfg.labeling, &(), &SolveOptions::standard(cfg.seed))?;
    emit_golden(&a, cfg.seed, path)
}
