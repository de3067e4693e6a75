//! Command-line jobs: read amalgam files, run one computation, and render a
//! report for people or for machines.

mod report;
pub mod schema;

use std::fmt::{self, Write as _};
use std::path::PathBuf;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use report::*;
pub use schema::{amalgam_spec, amalgam_to_json, parse_amalgam, read_amalgam_str, AmalgamSpec, GroupSpec};

use crate::amalgam::{oracle_classes, Amalgam, AmalgamIso};
use crate::budget::Budgets;
use crate::classify::{classify, cocycle_of, goldschmidt};
use crate::coefficients::{coefficient_system_of, CoefficientSystem};
use crate::cohomology::{h0, h1, Cochains, CohomologySet};
use crate::error::{Error, Result};
use crate::group::Elem;

/// Number of random samples behind the cochain identity checks of `h1`.
pub const SPOT_CHECK_SAMPLES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Command {
    Validate,
    Coeffs,
    H0,
    H1,
    Classify,
    Normalize,
    IsoCheck,
    Goldschmidt,
    Oracle,
}

impl Command {
    pub const ALL: [Command; 9] = [
        Command::Validate,
        Command::Coeffs,
        Command::H0,
        Command::H1,
        Command::Classify,
        Command::Normalize,
        Command::IsoCheck,
        Command::Goldschmidt,
        Command::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Coeffs => "coeffs",
            Command::H0 => "h0",
            Command::H1 => "h1",
            Command::Classify => "classify",
            Command::Normalize => "normalize",
            Command::IsoCheck => "iso-check",
            Command::Goldschmidt => "goldschmidt",
            Command::Oracle => "oracle",
        }
    }

    /// `normalize` takes the amalgam and then the reference; `iso-check`
    /// takes two amalgams of one type.
    pub fn arity(self) -> usize {
        match self {
            Command::Normalize | Command::IsoCheck => 2,
            _ => 1,
        }
    }
}

impl std::str::FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown command {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobSpec {
    pub command: Command,
    pub inputs: Vec<PathBuf>,
    pub budgets: Budgets,
    /// Worker threads; 0 uses the global pool.
    pub workers: usize,
    pub json: bool,
    pub seed: u64,
}

impl JobSpec {
    pub fn new(command: Command, inputs: Vec<PathBuf>) -> Self {
        JobSpec { command, inputs, budgets: Budgets::default(), workers: 0, json: false, seed: 0 }
    }

    fn check(&self) -> Result<()> {
        let b = &self.budgets;
        if b.max_order == 0 || b.aut_nodes == 0 || b.cocycles == 0 || b.orbit_moves == 0 {
            return Err(Error::Input("budgets must be positive".into()));
        }
        if self.inputs.len() != self.command.arity() {
            return Err(Error::Input(format!(
                "{} takes {} --input file(s), got {}",
                self.command.name(),
                self.command.arity(),
                self.inputs.len()
            )));
        }
        Ok(())
    }
}

/// Exit status, standard output and standard error of one job.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_status(e: &Error) -> i32 {
    if e.is_budget() {
        2
    } else {
        1
    }
}

/// Single-line `error[kind]: message`.
pub fn error_line(e: &Error) -> String {
    let msg = e.to_string().replace('\n', " ");
    format!("error[{}]: {msg}", e.kind())
}

pub fn run(job: &JobSpec) -> Outcome {
    match execute(job) {
        Ok(report) => {
            let stdout = if job.json { report_to_json(&report) } else { render(&report) };
            Outcome { status: 0, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { status: exit_status(&e), stdout: String::new(), stderr: error_line(&e) + "\n" },
    }
}

pub fn report_to_json(r: &Report) -> String {
    serde_json::to_string_pretty(r).expect("report serializes") + "\n"
}

pub fn report_from_json(text: &str) -> Result<Report> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed report: {e}")))
}

pub fn read_amalgam(path: &std::path::Path, max_order: usize) -> Result<Amalgam> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    read_amalgam_str(&text, max_order).map_err(|e| match e {
        Error::Input(m) => Error::Input(format!("{}: {m}", path.display())),
        other => other,
    })
}

/// Runs the job and returns its report.
pub fn execute(job: &JobSpec) -> Result<Report> {
    job.check()?;
    if job.workers == 0 {
        return execute_inner(job);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(job.workers)
        .build()
        .map_err(|e| Error::Input(format!("cannot start {} workers: {e}", job.workers)))?;
    pool.install(|| execute_inner(job))
}

fn execute_inner(job: &JobSpec) -> Result<Report> {
    let b = &job.budgets;
    let inputs = job.inputs.iter().map(|p| read_amalgam(p, b.max_order)).collect::<Result<Vec<_>>>()?;
    let g = &inputs[0];
    let payload = match job.command {
        Command::Validate => Payload::Validate(validate_report(g)),
        Command::Coeffs => Payload::Coeffs(coeffs_report(&coefficient_system_of(g, b)?)),
        Command::H0 => Payload::H0(h0_report(&coefficient_system_of(g, b)?, b)?),
        Command::H1 => {
            let sys = coefficient_system_of(g, b)?;
            let h = h1(&sys, b)?;
            let mut r = h1_report(&sys, &h, None);
            r.identity_checks = Some(spot_checks(&sys, &h, job.seed));
            Payload::H1(r)
        }
        Command::Classify => {
            let cl = classify(g, b)?;
            let reps: Vec<AmalgamSpec> = cl.representatives().iter().map(amalgam_spec).collect();
            Payload::Classify(h1_report(cl.system(), cl.cohomology(), Some(reps)))
        }
        Command::Normalize => Payload::Normalize(normalize_report(g, &inputs[1], b)?),
        Command::IsoCheck => {
            let cl = classify(g, b)?;
            let (c1, _) = cl.locate(g)?;
            let (c2, _) = cl.locate(&inputs[1])?;
            let iso = cl.isomorphism(g, &inputs[1])?;
            Payload::IsoCheck(IsoCheckReport {
                isomorphic: iso.is_some(),
                classes: [c1, c2],
                isomorphism: iso.map(|i| iso_entries(g, &i)),
            })
        }
        Command::Goldschmidt => {
            let sys = coefficient_system_of(g, b)?;
            let h = h1(&sys, b)?;
            let gs = goldschmidt(g, &sys, &h)?;
            let e = sys.complex().edges().next().ok_or(Error::NotEdge)?;
            let aut = sys.aut(e)?.expect("system of an amalgam");
            Payload::Goldschmidt(GoldschmidtReport {
                edge_automorphisms: aut.order(),
                image1: gs.image1.len(),
                image2: gs.image2.len(),
                count: gs.len(),
                h1: h.len(),
                cosets: gs
                    .cosets
                    .iter()
                    .zip(&gs.classes)
                    .map(|(c, &k)| DoubleCoset { size: c.len(), representative: aut.perm(c[0]).to_vec(), class: k })
                    .collect(),
            })
        }
        Command::Oracle => {
            let (all, classes) = oracle_classes(g, b)?;
            let edges: Vec<String> = g.complex().edges().map(|e| e.key()).collect();
            Payload::Oracle(OracleReport {
                amalgams: all.len(),
                count: classes.len(),
                classes: classes
                    .iter()
                    .enumerate()
                    .map(|(k, c)| OracleClassReport {
                        base_point: k == 0,
                        members: c.members.len(),
                        normalized: c.normalized,
                        canonical_twists: entries(&edges, &c.twists),
                        representative: amalgam_spec(&c.representative),
                    })
                    .collect(),
            })
        }
    };
    Ok(Report { budgets: *b, payload })
}

fn entries(keys: &[String], maps: &[Vec<Elem>]) -> Vec<Entry> {
    keys.iter().zip(maps).map(|(k, m)| Entry { simplex: k.clone(), map: m.clone() }).collect()
}

fn iso_entries(g: &Amalgam, iso: &AmalgamIso) -> Vec<Entry> {
    let keys: Vec<String> = g.complex().simplices().iter().map(|s| s.key()).collect();
    let maps: Vec<Vec<Elem>> = iso.components.iter().map(|h| h.map().to_vec()).collect();
    entries(&keys, &maps)
}

fn validate_report(g: &Amalgam) -> ValidateReport {
    let c = g.complex();
    ValidateReport {
        vertices: c.n_vertices(),
        dimension: c.dimension(),
        simplices: c
            .simplices()
            .iter()
            .zip(g.groups())
            .map(|(s, x)| SimplexInfo { simplex: s.key(), order: x.order(), name: x.name().map(str::to_string) })
            .collect(),
    }
}

fn coeffs_report(sys: &CoefficientSystem) -> CoeffsReport {
    let c = sys.complex();
    let automorphisms = c
        .simplices()
        .iter()
        .enumerate()
        .map(|(i, s)| SimplexInfo { simplex: s.key(), order: sys.group_at(i).order(), name: None })
        .collect();
    let alphas = c
        .face_pairs()
        .into_iter()
        .filter(|(s, t)| s != t)
        .map(|(s, t)| {
            let a = sys.alpha(&s, &t).expect("face pair");
            AlphaInfo {
                face: s.key(),
                coface: t.key(),
                injective: a.is_injective(),
                surjective: a.image().len() == a.codomain().order(),
            }
        })
        .collect();
    CoeffsReport { automorphisms, alphas }
}

/// A cochain over the given simplices as automorphism image lists.
fn cochain_entries(sys: &CoefficientSystem, simplices: &[&crate::complex::Simplex], a: &[Elem]) -> Vec<Entry> {
    simplices
        .iter()
        .zip(a)
        .map(|(s, &x)| {
            let aut = sys.aut(s).expect("simplex of the system").expect("system of an amalgam");
            Entry { simplex: s.key(), map: aut.perm(x).to_vec() }
        })
        .collect()
}

fn h0_report(sys: &CoefficientSystem, b: &Budgets) -> Result<H0Report> {
    let h = h0(sys, b)?;
    let c = Cochains::new(sys);
    let vs = c.vertex_simplices();
    Ok(H0Report { order: h.len(), elements: h.elements().iter().map(|a| cochain_entries(sys, &vs, a)).collect() })
}

fn h1_report(sys: &CoefficientSystem, h: &CohomologySet, reps: Option<Vec<AmalgamSpec>>) -> H1Report {
    let c = Cochains::new(sys);
    let es = c.edge_simplices();
    let mut reps = reps.map(|r| r.into_iter());
    let classes = (0..h.len())
        .map(|k| {
            let twists = h
                .orbit(k)
                .into_iter()
                .map(|z| cochain_entries(sys, &es, z))
                .min_by(|x, y| {
                    let (x, y) = (x.iter().map(|e| &e.map), y.iter().map(|e| &e.map));
                    x.cmp(y)
                })
                .expect("classes are nonempty");
            ClassReport {
                base_point: k == 0,
                orbit_size: h.classes()[k].size,
                cocycle: cochain_entries(sys, &es, h.representative(k)),
                canonical_twists: twists,
                representative: reps.as_mut().and_then(Iterator::next),
            }
        })
        .collect();
    H1Report { cocycles: h.cocycles().len(), count: h.len(), classes, identity_checks: None }
}

fn spot_checks(sys: &CoefficientSystem, h: &CohomologySet, seed: u64) -> SpotChecks {
    let c = Cochains::new(sys);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zs = h.cocycles();
    let mut violations = 0;
    for k in 0..SPOT_CHECK_SAMPLES {
        let (a, b) = (c.random0(&mut rng), c.random0(&mut rng));
        let z = &zs[k % zs.len()];
        let za = c.act(z, &a);
        let ok = c.d1(&c.d0(&a)) == c.identity2()
            && c.d0(&a) == c.act(&c.identity1(), &a)
            && c.is_cocycle(&za)
            && c.act(&za, &b) == c.act(z, &c.mul0(&a, &b));
        if !ok {
            violations += 1;
        }
    }
    SpotChecks { seed, samples: SPOT_CHECK_SAMPLES, violations }
}

fn normalize_report(g: &Amalgam, g0: &Amalgam, b: &Budgets) -> Result<NormalizeReport> {
    let (gn, iso) = g.normalize(g0)?;
    let sys = coefficient_system_of(g0, b)?;
    let z = cocycle_of(&gn, g0, &sys)?;
    let c = Cochains::new(&sys);
    Ok(NormalizeReport {
        already_normalized: g.is_normalized(g0),
        normalized: amalgam_spec(&gn),
        cocycle: cochain_entries(&sys, &c.edge_simplices(), &z),
        isomorphism: iso_entries(g, &iso),
    })
}

/// First difference between two classification-like reports (`h1`,
/// `classify`, `oracle`), comparing class counts and then the canonical
/// twists of the classes in sorted order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Divergence {
    NotComparable(String),
    Count { first: usize, second: usize },
    Representative { position: usize, first: Vec<Entry>, second: Vec<Entry> },
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |e: &[Entry]| e.iter().map(|x| format!("{}:{:?}", x.simplex, x.map)).collect::<Vec<_>>().join(" ");
        match self {
            Divergence::NotComparable(why) => write!(f, "not comparable: {why}"),
            Divergence::Count { first, second } => write!(f, "class count {first} vs {second}"),
            Divergence::Representative { position, first, second } => {
                write!(f, "class {position}: representative [{}] vs [{}]", show(first), show(second))
            }
        }
    }
}

fn canonical_classes(r: &Report) -> std::result::Result<Vec<Vec<Entry>>, Divergence> {
    let mut out: Vec<Vec<Entry>> = match &r.payload {
        Payload::H1(h) | Payload::Classify(h) => h.classes.iter().map(|c| c.canonical_twists.clone()).collect(),
        Payload::Oracle(o) => o.classes.iter().map(|c| c.canonical_twists.clone()).collect(),
        p => return Err(Divergence::NotComparable(format!("{} reports carry no classes", p.command()))),
    };
    out.sort();
    Ok(out)
}

pub fn diff_reports(r1: &Report, r2: &Report) -> std::result::Result<(), Divergence> {
    if r1 == r2 {
        return Ok(());
    }
    let (c1, c2) = (canonical_classes(r1)?, canonical_classes(r2)?);
    if c1.len() != c2.len() {
        return Err(Divergence::Count { first: c1.len(), second: c2.len() });
    }
    for (position, (x, y)) in c1.into_iter().zip(c2).enumerate() {
        if x != y {
            return Err(Divergence::Representative { position, first: x, second: y });
        }
    }
    Ok(())
}

/// Human-readable summary.
pub fn render(r: &Report) -> String {
    let mut s = String::new();
    let show = |e: &[Entry]| {
        let part = |x: &Entry| {
            if x.map.iter().enumerate().all(|(i, &y)| i as u32 == y) {
                format!("{}:id", x.simplex)
            } else if x.map.len() <= 24 {
                format!("{}:{:?}", x.simplex, x.map)
            } else {
                format!("{}:(moves {} of {})", x.simplex, x.map.iter().enumerate().filter(|&(i, &y)| i as u32 != y).count(), x.map.len())
            }
        };
        e.iter().map(part).collect::<Vec<_>>().join(" ")
    };
    match &r.payload {
        Payload::Validate(v) => {
            let _ = writeln!(s, "valid amalgam on {} vertices, dimension {}", v.vertices, v.dimension);
            for x in &v.simplices {
                let name = x.name.as_deref().map(|n| format!(" ({n})")).unwrap_or_default();
                let _ = writeln!(s, "  {:<10} order {}{name}", x.simplex, x.order);
            }
        }
        Payload::Coeffs(c) => {
            for x in &c.automorphisms {
                let _ = writeln!(s, "  |A_{}| = {}", x.simplex, x.order);
            }
            for a in &c.alphas {
                let kind = match (a.injective, a.surjective) {
                    (true, true) => "bijective",
                    (true, false) => "injective",
                    (false, true) => "surjective",
                    (false, false) => "neither injective nor surjective",
                };
                let _ = writeln!(s, "  alpha {} -> {}: {kind}", a.face, a.coface);
            }
        }
        Payload::H0(h) => {
            let _ = writeln!(s, "|H0| = {}", h.order);
        }
        Payload::H1(h) | Payload::Classify(h) => {
            let _ = writeln!(s, "|H1| = {} ({} cocycles)", h.count, h.cocycles);
            for (k, c) in h.classes.iter().enumerate() {
                let base = if c.base_point { " (base point)" } else { "" };
                let _ = writeln!(s, "  class {k}{base}: {} cocycles, twists {}", c.orbit_size, show(&c.canonical_twists));
            }
            if let Some(x) = &h.identity_checks {
                let _ = writeln!(s, "cochain identities: {} violations in {} samples (seed {})", x.violations, x.samples, x.seed);
            }
        }
        Payload::Normalize(n) => {
            let state = if n.already_normalized { "already normalized" } else { "normalized" };
            let _ = writeln!(s, "{state}; cocycle {}", show(&n.cocycle));
        }
        Payload::IsoCheck(i) => {
            let verdict = if i.isomorphic { "isomorphic" } else { "not isomorphic" };
            let _ = writeln!(s, "{verdict} (classes {} and {})", i.classes[0], i.classes[1]);
        }
        Payload::Goldschmidt(g) => {
            let _ = writeln!(
                s,
                "{} double cosets of images of order {} and {} in a group of order {}; |H1| = {}",
                g.count, g.image2, g.image1, g.edge_automorphisms, g.h1
            );
        }
        Payload::Oracle(o) => {
            let _ = writeln!(s, "{} amalgams in {} isomorphism classes", o.amalgams, o.count);
            for (k, c) in o.classes.iter().enumerate() {
                let _ = writeln!(s, "  class {k}: {} amalgams, {} normalized", c.members, c.normalized);
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn job_for(command: Command, amalgams: &[&Amalgam]) -> (tempfile::TempDir, JobSpec) {
        let dir = tempfile::tempdir().unwrap();
        let inputs = amalgams
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let p = dir.path().join(format!("in{i}.json"));
                std::fs::write(&p, amalgam_to_json(g)).unwrap();
                p
            })
            .collect();
        let mut job = JobSpec::new(command, inputs);
        job.json = true;
        (dir, job)
    }

    #[test]
    fn trivial_amalgam_has_one_class() {
        let g = catalog::fixtures().remove(1).1;
        let (_dir, job) = job_for(Command::Classify, &[&g]);
        let out = run(&job);
        assert_eq!(out.status, 0, "{}", out.stderr);
        let r = report_from_json(&out.stdout).unwrap();
        let Payload::Classify(h) = &r.payload else { panic!() };
        assert_eq!(h.count, 1);
        assert!(h.classes[0].base_point);
        assert_eq!(r.budgets, Budgets::default());
    }

    #[test]
    fn disconnected_complex_exits_one() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("x.json");
        std::fs::write(&p, r#"{"complex": {"vertices": 2, "simplices": []}, "groups": {}, "maps": []}"#).unwrap();
        let out = run(&JobSpec::new(Command::H1, vec![p]));
        assert_eq!(out.status, 1);
        assert_eq!(out.stderr, "error[not-connected]: complex not connected\n");
    }

    #[test]
    fn budget_exhaustion_exits_two() {
        let g = catalog::fano();
        let (_dir, mut job) = job_for(Command::H1, &[&g]);
        job.budgets.cocycles = 3;
        let out = run(&job);
        assert_eq!(out.status, 2);
        assert!(out.stderr.starts_with("error[cocycle-budget]"));
        job.budgets.cocycles = 0;
        assert_eq!(run(&job).status, 1);
    }

    #[test]
    fn arity_is_enforced() {
        let g = catalog::cyclic_edge();
        let (_dir, job) = job_for(Command::IsoCheck, &[&g]);
        let out = run(&job);
        assert_eq!(out.status, 1);
        assert!(out.stderr.contains("iso-check takes 2"));
        assert!("frobnicate".parse::<Command>().is_err());
        for c in Command::ALL {
            assert_eq!(c.name().parse::<Command>().unwrap(), c);
        }
    }

    #[test]
    fn oracle_and_classify_agree() {
        for g in [catalog::dihedral_klein(), catalog::cyclic_chain(), catalog::coxeter_triangle()] {
            let (_d1, job1) = job_for(Command::Classify, &[&g]);
            let (_d2, job2) = job_for(Command::Oracle, &[&g]);
            let (r1, r2) = (execute(&job1).unwrap(), execute(&job2).unwrap());
            assert_eq!(diff_reports(&r1, &r2), Ok(()));
        }
    }

    #[test]
    fn diff_names_divergences() {
        let g = catalog::dihedral_klein();
        let (_d, job) = job_for(Command::Classify, &[&g]);
        let r = execute(&job).unwrap();
        assert_eq!(diff_reports(&r, &r), Ok(()));
        let mut fewer = r.clone();
        let Payload::Classify(h) = &mut fewer.payload else { panic!() };
        h.classes.pop();
        assert_eq!(diff_reports(&r, &fewer), Err(Divergence::Count { first: 2, second: 1 }));
        let mut other = r.clone();
        let Payload::Classify(h) = &mut other.payload else { panic!() };
        h.classes[1].canonical_twists[0].map.swap(1, 2);
        assert!(matches!(diff_reports(&r, &other), Err(Divergence::Representative { position: 1, .. })));
        let (_d, job) = job_for(Command::Validate, &[&g]);
        let v = execute(&job).unwrap();
        assert!(matches!(diff_reports(&r, &v), Err(Divergence::NotComparable(_))));
    }

    #[test]
    fn every_command_runs() {
        let g0 = catalog::dihedral_klein();
        let e = crate::complex::Simplex::new(vec![1, 2]);
        let v2 = crate::complex::Simplex::vertex(2);
        let twisted = {
            let psi = g0.connecting_map(&v2, &e).unwrap();
            let sys = coefficient_system_of(&g0, &Budgets::default()).unwrap();
            let aut = sys.aut(&e).unwrap().unwrap();
            let map: Vec<Elem> = aut.perm(1).iter().map(|&x| psi.apply(x)).collect();
            g0.with_cover_map(&v2, &e, map).unwrap()
        };
        for c in Command::ALL {
            let inputs: Vec<&Amalgam> = if c.arity() == 2 { vec![&twisted, &g0] } else { vec![&g0] };
            let (_d, mut job) = job_for(c, &inputs);
            for json in [true, false] {
                job.json = json;
                let out = run(&job);
                assert_eq!(out.status, 0, "{}: {}", c.name(), out.stderr);
                if json {
                    let r = report_from_json(&out.stdout).unwrap();
                    assert_eq!(r.payload.command(), c.name());
                    assert_eq!(report_to_json(&r), out.stdout);
                }
            }
        }
    }

    #[test]
    fn reports_independent_of_workers() {
        let g = catalog::fano();
        let (_d, mut job) = job_for(Command::Classify, &[&g]);
        job.workers = 1;
        let one = run(&job).stdout;
        for w in [2, 4] {
            job.workers = w;
            assert_eq!(run(&job).stdout, one);
        }
    }
}
