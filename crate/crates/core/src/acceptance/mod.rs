//! The acceptance criteria as runnable checks, at full or reduced scale.
//!
//! Every outcome line is a deterministic function of the options, so two
//! runs with the same seed render identically.

pub mod corpus;

use std::cell::OnceCell;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algcurves::{implicit_intersection, implicitize, translate_intersection_count, ImplicitIntersection, Transform};
use crate::counting::{all_partitions, cyclic_shift_witness, hypothesis_holds, max_class_bound_check};
use crate::exactmath::{bivariate_gcd, parse_mpoly};
use crate::expansion::{fit_exponent, image_set, meets_power, FiniteSet, ImageChain, ProductSpec, product_bound_experiment};
use crate::scalar::{rat, Rational};
use crate::structure::{
    classify_pair, classify_single, detect_additive, detect_multiplicative, equiv_a, equiv_m, DecompositionKind,
    PairVerdict, Verdict,
};
use crate::structure::equiv::without_constant;
use crate::{Result, UniPoly};

use corpus::Composed;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Full,
    Reduced,
}

impl Scale {
    fn pick(self, full: usize, reduced: usize) -> usize {
        match self {
            Scale::Full => full,
            Scale::Reduced => reduced,
        }
    }
}

/// Identifier, short name used by `--only`, description, runtime limit in
/// seconds at full scale.
pub const CRITERIA: [(u32, &str, &str, u64); 11] = [
    (1, "decompose", "decomposition round-trip", 180),
    (2, "exclusivity", "additive/multiplicative exclusivity", 180),
    (3, "implicitize", "implicitization", 60),
    (4, "translate", "translate intersection bound", 300),
    (5, "bezout", "common factor or bounded intersection", 120),
    (6, "counting", "permutation counting lemma", 30),
    (7, "images", "image size chains", 60),
    (8, "growth", "growth of x+y^2 and (x+y)^2", 120),
    (9, "product", "sumset product bound", 60),
    (10, "classify", "classifier verdicts", 60),
    (11, "determinism", "determinism", 600),
];

pub fn criterion_by_name(name: &str) -> Option<u32> {
    CRITERIA.iter().find(|c| c.1 == name || c.0.to_string() == name).map(|c| c.0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Options {
    pub scale: Scale,
    pub seed: u64,
    /// Criterion whose check is run against a deliberately wrong constant.
    pub fault: Option<u32>,
}

impl Options {
    pub fn new(scale: Scale, seed: u64) -> Self {
        Options { scale, seed, fault: None }
    }

    fn faulty(&self, id: u32) -> bool {
        self.fault == Some(id)
    }

    fn rng(&self, id: u32) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ (id as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {:>2} {}: {}", self.id, self.name, self.detail)
    }
}

struct Detected {
    composed: Composed,
    multiplicative: bool,
    additive: Result<Option<crate::structure::Decomposition>>,
    mult: Result<Option<crate::structure::Decomposition>>,
}

/// Shared state between criteria of one run.
pub struct Runner {
    opts: Options,
    structured: OnceCell<Vec<Detected>>,
}

impl Runner {
    pub fn new(opts: Options) -> Self {
        Runner { opts, structured: OnceCell::new() }
    }

    pub fn options(&self) -> &Options {
        &self.opts
    }

    pub fn run(&self, id: u32) -> Outcome {
        let name = CRITERIA.iter().find(|c| c.0 == id).map_or("unknown", |c| c.2);
        let (passed, detail) = match id {
            1 => self.round_trip(),
            2 => self.exclusivity(),
            3 => self.implicitization(),
            4 => self.translates(),
            5 => self.bezout(),
            6 => self.counting(),
            7 => self.image_chains(),
            8 => self.growth(),
            9 => self.product_bound(),
            10 => self.classifier(),
            11 => self.determinism(),
            _ => (false, "no such criterion".to_string()),
        };
        Outcome { id, name, passed, detail }
    }

    fn structured(&self) -> &[Detected] {
        self.structured.get_or_init(|| {
            let mut rng = self.opts.rng(1);
            let per_kind = self.opts.scale.pick(200, 20);
            let mut out = Vec::with_capacity(2 * per_kind);
            for multiplicative in [false, true] {
                for _ in 0..per_kind {
                    let composed = corpus::composed(&mut rng, multiplicative);
                    let additive = detect_additive(&composed.p);
                    let mult = detect_multiplicative(&composed.p);
                    out.push(Detected { composed, multiplicative, additive, mult });
                }
            }
            out
        })
    }

    fn round_trip(&self) -> (bool, String) {
        let mut detected = 0;
        let mut mismatched = 0;
        let mut errors = 0;
        let corpus = self.structured();
        for item in corpus {
            let found = if item.multiplicative { &item.mult } else { &item.additive };
            let dec = match found {
                Ok(Some(d)) => d,
                Ok(None) => continue,
                Err(_) => {
                    errors += 1;
                    continue;
                }
            };
            detected += 1;
            let ok = dec.verifies(&item.composed.p)
                && dec.inner.iter().zip(&item.composed.inner).all(|(got, orig)| {
                    if item.multiplicative {
                        matches!(equiv_m(got, orig), Ok(Some(_)))
                    } else {
                        matches!(equiv_a(got, &without_constant(orig)), Ok(Some(_)))
                    }
                });
            if !ok {
                mismatched += 1;
            }
        }
        let expected = corpus.len() + usize::from(self.opts.faulty(1));
        let passed = detected == expected && mismatched == 0 && errors == 0;
        (passed, format!("{detected}/{expected} detected, {mismatched} inner mismatches, {errors} errors"))
    }

    fn exclusivity(&self) -> (bool, String) {
        let mut rng = self.opts.rng(2);
        let mut both = 0;
        let mut errors = 0;
        let mut total = 0;
        let mut check = |a: &Result<Option<_>>, m: &Result<Option<_>>| {
            total += 1;
            match (a, m) {
                (Ok(Some(_)), Ok(Some(_))) => both += 1,
                (Err(_), _) | (_, Err(_)) => errors += 1,
                _ => {}
            }
        };
        for item in self.structured() {
            check(&item.additive, &item.mult);
        }
        let extra = self.opts.scale.pick(200, 20);
        for _ in 0..extra {
            let p = corpus::unstructured(&mut rng);
            check(&detect_additive(&p), &detect_multiplicative(&p));
        }
        let allowed = if self.opts.faulty(2) { usize::MAX } else { 0 };
        let passed = both == allowed && errors == 0;
        (passed, format!("{total} polynomials, {both} detected as both, {errors} errors"))
    }

    fn implicitization(&self) -> (bool, String) {
        let mut rng = self.opts.rng(3);
        let count = self.opts.scale.pick(100, 10);
        let mut bad = 0;
        for _ in 0..count {
            let (dp, dq) = loop {
                let dp = rng.gen_range(0..=5usize);
                let dq = rng.gen_range(0..=5usize);
                if dp + dq > 0 {
                    break (dp, dq);
                }
            };
            let (p, q) = (corpus::uni(&mut rng, dp), corpus::uni(&mut rng, dq));
            let delta = dp.max(dq);
            let ok = match implicitize(&p, &q) {
                Ok(c) => c.f.eval_uni(&[p.clone(), q.clone()]).is_zero() && c.f.tdeg() <= 2 * delta && !c.f.is_constant(),
                Err(_) => false,
            };
            if !ok {
                bad += 1;
            }
        }
        let cusp = implicitize(&UniPoly::from_ints(&[0, 0, 1]), &UniPoly::from_ints(&[0, 0, 0, 1]));
        let mut expected = parse_mpoly("y^2 - x^3").expect("literal");
        if self.opts.faulty(3) {
            expected = parse_mpoly("y^2 - 2x^3").expect("literal");
        }
        let cusp_ok = matches!(&cusp, Ok(c) if c.f == expected || c.f == -&expected);
        let passed = bad == 0 && cusp_ok;
        (passed, format!("{count} parametrizations, {bad} failures, cusp {}", if cusp_ok { "exact" } else { "wrong" }))
    }

    fn translates(&self) -> (bool, String) {
        let mut rng = self.opts.rng(4);
        let per_curve = self.opts.scale.pick(100, 5);
        let curves = corpus::curve_corpus();
        let mut violations = 0;
        let mut errors = 0;
        let mut maxima: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
        for c in &curves {
            let class = match (c.fx(), c.fy()) {
                (Transform::Identity, Transform::Identity) => "id/id",
                (Transform::LogAbs, Transform::LogAbs) => "log/log",
                _ => "mixed",
            };
            let d2 = c.delta() * c.delta();
            let mut bound = if class == "id/id" { 4 * d2 } else { 16 * d2 };
            if self.opts.faulty(4) {
                bound = 0;
            }
            for _ in 0..per_curve {
                let s = corpus::shift_for(&mut rng, c);
                match translate_intersection_count(c, &s) {
                    Ok(r) => {
                        if r.count > bound {
                            violations += 1;
                        }
                        let e = maxima.entry(class).or_insert((0, 0));
                        if r.count > e.0 {
                            *e = (r.count, c.delta());
                        }
                    }
                    Err(_) => errors += 1,
                }
            }
        }
        let observed: Vec<String> =
            maxima.iter().map(|(k, (m, d))| format!("{k} max {m} (delta {d})")).collect();
        let passed = curves.len() >= 20 && violations == 0 && errors == 0;
        (
            passed,
            format!(
                "{} curves x {per_curve} translations, {violations} violations, {errors} errors; {}",
                curves.len(),
                observed.join(", ")
            ),
        )
    }

    fn bezout(&self) -> (bool, String) {
        let mut rng = self.opts.rng(5);
        let coprime = self.opts.scale.pick(100, 10);
        let planted = self.opts.scale.pick(50, 5);
        let mut bad = 0;
        let mut most = 0;
        let mut done = 0;
        while done < coprime {
            let f = corpus::bivariate_in(&mut rng, 1..=4);
            let g = corpus::bivariate_in(&mut rng, 1..=4);
            if !matches!(bivariate_gcd(&f, &g), Ok(h) if h.is_constant()) {
                continue;
            }
            done += 1;
            let mut limit = f.tdeg() * g.tdeg();
            if self.opts.faulty(5) {
                limit = 0;
            }
            match implicit_intersection(&f, &g) {
                Ok(ImplicitIntersection::Finite(k)) if k <= limit => most = most.max(k),
                _ => bad += 1,
            }
        }
        for _ in 0..planted {
            let h = corpus::bivariate_in(&mut rng, 1..=2);
            let room = 4 - h.tdeg();
            let f = &h * &corpus::bivariate_in(&mut rng, 0..=room);
            let g = &h * &corpus::bivariate_in(&mut rng, 0..=room);
            if !matches!(implicit_intersection(&f, &g), Ok(ImplicitIntersection::CommonFactor(_))) {
                bad += 1;
            }
        }
        (bad == 0, format!("{coprime} coprime pairs (max {most} real points), {planted} planted factors, {bad} failures"))
    }

    fn counting(&self) -> (bool, String) {
        let top = self.opts.scale.pick(6, 5);
        let mut cases = 0;
        let mut bad = 0;
        for d in 1..=top {
            for part in all_partitions(d) {
                for t in 1..=d {
                    cases += 1;
                    let h = hypothesis_holds(&part, t);
                    let b = max_class_bound_check(&part, t);
                    let w = cyclic_shift_witness(&part, t);
                    let ok = match (h, b, w) {
                        (Ok(h), Ok(b), Ok(w)) => {
                            let witness_ok = match &w {
                                Some(s) => {
                                    let limit = if self.opts.faulty(6) { 0 } else { t };
                                    !b && !h && part.fixed_equivalent(s) < limit
                                }
                                None => b,
                            };
                            (!h || b) && witness_ok
                        }
                        _ => false,
                    };
                    if !ok {
                        bad += 1;
                    }
                }
            }
        }
        (bad == 0, format!("d <= {top}: {cases} (partition, t) cases, {bad} failures"))
    }

    fn image_chains(&self) -> (bool, String) {
        let mut rng = self.opts.rng(7);
        let count = self.opts.scale.pick(200, 20);
        let mut bad = 0;
        for _ in 0..count {
            let deg = rng.gen_range(1..=5usize);
            let p = corpus::uni(&mut rng, deg);
            let n = rng.gen_range(1..=64usize);
            let a = corpus::rational_set(&mut rng, n);
            let mut ch = ImageChain::new(&p, &a);
            if self.opts.faulty(7) {
                ch.image += ch.set;
            }
            if !ch.holds() {
                bad += 1;
            }
        }
        (bad == 0, format!("{count} (p, A) pairs, {bad} chain violations"))
    }

    fn growth(&self) -> (bool, String) {
        let ns: Vec<u64> = match self.opts.scale {
            Scale::Full => vec![8, 16, 32, 64, 128],
            Scale::Reduced => vec![8, 16, 32],
        };
        let ap = |n: u64| FiniteSet::from_ints(1..=n as i64);
        let flagship = parse_mpoly("x+y^2").expect("literal");
        let exceptional = parse_mpoly("(x+y)^2").expect("literal");
        let mut samples = Vec::new();
        let mut exact = true;
        for &n in &ns {
            let a = ap(n);
            match (image_set(&flagship, &[a.clone(), a.clone()]), image_set(&exceptional, &[a.clone(), a])) {
                (Ok(s), Ok(e)) => {
                    samples.push((n, s.len() as u64));
                    let expect = 2 * n - 1 + u64::from(self.opts.faulty(8));
                    exact &= e.len() as u64 == expect;
                }
                _ => return (false, "image computation failed".into()),
            }
        }
        match fit_exponent(&samples) {
            Ok(fit) => {
                let passed = fit.slope >= rat(5, 4) && exact;
                (
                    passed,
                    format!(
                        "x+y^2 slope {} (need >= 5/4), (x+y)^2 sizes {}",
                        decimal(&fit.slope),
                        if exact { "= 2n-1" } else { "differ from 2n-1" }
                    ),
                )
            }
            Err(e) => (false, format!("fit failed: {e}")),
        }
    }

    fn product_bound(&self) -> (bool, String) {
        let ns: Vec<i64> = match self.opts.scale {
            Scale::Full => vec![8, 16, 32, 64],
            Scale::Reduced => vec![8, 16, 32],
        };
        let x = UniPoly::from_ints(&[0, 1]);
        let x2 = UniPoly::from_ints(&[0, 0, 1]);
        let spec = ProductSpec::SumSum { p1: x.clone(), p2: x.clone(), q1: x2, q2: x };
        let inputs: Vec<Vec<FiniteSet>> = ns.iter().map(|&n| vec![FiniteSet::from_ints(1..=n); 2]).collect();
        let rep = match product_bound_experiment(&spec, &inputs) {
            Ok(r) => r,
            Err(e) => return (false, format!("experiment failed: {e}")),
        };
        let target = if self.opts.faulty(9) { rat(7, 2) } else { rat(5, 2) };
        let all = rep.samples.iter().all(|s| meets_power(s.size, s.n, &target));
        let sizes: Vec<String> = rep.samples.iter().map(|s| format!("{}:{}", s.n, s.size)).collect();
        let fit = rep.fit.as_ref().map(|f| (f.slope.clone(), f.constant.clone()));
        if all {
            return (true, format!("size >= n^{target} at every n ({})", sizes.join(" ")));
        }
        let passed = fit.as_ref().is_some_and(|(s, _)| *s >= &target - rat(1, 10));
        let (slope, constant) = fit.unwrap_or((Rational::zero(), Rational::zero()));
        (
            passed,
            format!(
                "size < n^{target} at some n ({}); fitted slope {}, constant {}",
                sizes.join(" "),
                decimal(&slope),
                decimal(&constant)
            ),
        )
    }

    fn classifier(&self) -> (bool, String) {
        let mp = |s: &str| parse_mpoly(s).expect("literal");
        let five_quarters = if self.opts.faulty(10) { rat(4, 3) } else { rat(5, 4) };
        let results = [
            matches!(
                classify_single(&mp("x+y^2"), 1),
                Ok(Verdict::Expander { exponent }) if exponent == five_quarters
            ),
            matches!(
                classify_single(&mp("(x+y)^3"), 1),
                Ok(Verdict::Exceptional { decomposition, index_set, .. })
                    if decomposition.kind == DecompositionKind::Additive && index_set == [0, 1]
            ),
            matches!(
                classify_pair(&mp("x+y"), &mp("x+y^2"), 1),
                Ok(PairVerdict::Expander { exponent }) if exponent == five_quarters
            ),
            matches!(
                classify_pair(&mp("x*y"), &mp("x^2*y^2"), 1),
                Ok(PairVerdict::Exceptional { kind: DecompositionKind::Multiplicative, mismatch, witnesses, .. })
                    if mismatch.is_empty() && witnesses.len() == 2 && witnesses.iter().all(|w| w.constant == Rational::from_integer(2.into()))
            ),
        ];
        let ok = results.iter().filter(|&&b| b).count();
        (ok == results.len(), format!("{ok}/{} verdicts match", results.len()))
    }

    /// Re-runs every other selected criterion at reduced scale and compares
    /// the rendered lines.
    fn determinism(&self) -> (bool, String) {
        let opts = Options { scale: Scale::Reduced, ..self.opts.clone() };
        let render = || -> Vec<String> {
            let r = Runner::new(opts.clone());
            (1..=10).map(|id| r.run(id).to_string()).collect()
        };
        let (a, b) = (render(), render());
        let same = a == b;
        let passed = if self.opts.faulty(11) { !same } else { same };
        (passed, format!("{} report lines {}", a.len(), if same { "identical" } else { "differ" }))
    }
}

/// Three-decimal rendering of a rational.
pub fn decimal(r: &Rational) -> String {
    use num_traits::ToPrimitive;
    format!("{:.3}", r.to_f64().unwrap_or(f64::NAN))
}

/// Runs the selected criteria (all when `only` is empty) in order.
pub fn run_selected(opts: &Options, only: &[u32]) -> Vec<Outcome> {
    let runner = Runner::new(opts.clone());
    CRITERIA
        .iter()
        .map(|c| c.0)
        .filter(|id| only.is_empty() || only.contains(id))
        .map(|id| runner.run(id))
        .collect()
}
