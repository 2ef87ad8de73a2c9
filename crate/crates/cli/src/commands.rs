use polyexpand::acceptance::{criterion_by_name, run_selected, Options, Scale};
use polyexpand::algcurves::{
    implicitize, line_containment, translate_intersection_count, LineConstant, LineVerdict, ParamCurve, Shift,
    Transform,
};
use polyexpand::counting::{class_bound, cyclic_shift_witness, hypothesis_holds, max_class_bound_check, Partition};
use polyexpand::exactmath::serial::mpoly_to_json;
use polyexpand::exactmath::{parse_constant, parse_mpoly, parse_mpoly_arity, parse_upoly};
use polyexpand::expansion::{
    gen_set, image_set, incidence_count, product_bound_experiment, ExpansionReport, FiniteSet, PlanarSet,
    ProductSpec, SetKind, SetSpec,
};
use polyexpand::structure::{
    classify_pair, classify_single, decompose, equiv_a, equiv_m, Decomposition, PairVerdict, PairWitness, Verdict,
};
use polyexpand::{Error, MultiPoly, Rational, Result, UniPoly};
use serde_json::{json, Value};

use crate::render::Output;
use crate::{Cmd, CurveArgs, ExperimentKind, Relation, SetKindArg};

fn rat(r: &Rational) -> Value {
    Value::String(r.to_string())
}

fn poly_value(p: &MultiPoly) -> Value {
    json!({ "text": p.to_string(), "json": mpoly_to_json(p) })
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

fn decomposition_value(d: &Decomposition) -> Value {
    let inner: Vec<String> = d.inner.iter().enumerate().map(|(i, u)| u.display_with(&format!("x{}", i + 1))).collect();
    json!({
        "kind": d.kind.name(),
        "outer": d.outer.display_with("z"),
        "inner": inner,
    })
}

fn witnesses_value(w: &[PairWitness]) -> Value {
    Value::Array(w.iter().map(|w| json!({ "i": w.i + 1, "j": w.j + 1, "constant": rat(&w.constant) })).collect())
}

fn classes_value(classes: &[Vec<usize>]) -> Value {
    Value::Array(classes.iter().map(|c| json!(one_based(c))).collect())
}

fn curve(args: &CurveArgs) -> Result<ParamCurve> {
    ParamCurve::new(parse_upoly(&args.p)?, parse_upoly(&args.q)?, Transform::parse(&args.fx)?, Transform::parse(&args.fy)?)
}

fn curve_value(c: &ParamCurve) -> Value {
    json!({
        "p": c.p().display_with("t"),
        "q": c.q().display_with("t"),
        "fx": c.fx().name(),
        "fy": c.fy().name(),
    })
}

fn parse_set(spec: &str) -> Result<(SetSpec, FiniteSet)> {
    let s = SetSpec::parse(spec)?;
    let set = s.generate()?;
    Ok((s, set))
}

pub fn run(cmd: &Cmd, seed: u64) -> Result<Output> {
    match cmd {
        Cmd::Decompose { poly } => {
            let p = parse_mpoly(poly)?;
            let dec = decompose(&p)?;
            Ok(Output::new(json!({
                "poly": poly_value(&p),
                "structured": dec.is_some(),
                "decomposition": dec.as_ref().map(decomposition_value),
            })))
        }
        Cmd::Classify { poly, t } => {
            let p = parse_mpoly(poly)?;
            let v = match classify_single(&p, *t)? {
                Verdict::Expander { exponent } => json!({ "verdict": "expander", "exponent": rat(&exponent) }),
                ref v @ Verdict::Exceptional { ref decomposition, ref classes, ref index_set, ref witnesses } => json!({
                    "verdict": v.tag(),
                    "decomposition": decomposition_value(decomposition),
                    "classes": classes_value(classes),
                    "index_set": one_based(index_set),
                    "witnesses": witnesses_value(witnesses),
                }),
            };
            Ok(Output::new(json!({ "poly": poly_value(&p), "t": t, "classification": v })))
        }
        Cmd::ClassifyPair { p, q, t } => {
            let arity = parse_mpoly(p)?.arity().max(parse_mpoly(q)?.arity());
            let (pp, qq) = (parse_mpoly_arity(p, arity)?, parse_mpoly_arity(q, arity)?);
            let v = match classify_pair(&pp, &qq, *t)? {
                PairVerdict::Expander { exponent } => json!({ "verdict": "expander", "exponent": rat(&exponent) }),
                ref v @ PairVerdict::Exceptional { ref p, ref q, ref mismatch, ref witnesses, .. } => json!({
                    "verdict": v.tag(),
                    "p": decomposition_value(p),
                    "q": decomposition_value(q),
                    "mismatch": one_based(mismatch),
                    "witnesses": witnesses_value(witnesses),
                }),
            };
            Ok(Output::new(json!({ "p": poly_value(&pp), "q": poly_value(&qq), "t": t, "classification": v })))
        }
        Cmd::Equiv { relation, p, q } => {
            let (a, b) = (parse_upoly(p)?, parse_upoly(q)?);
            let mut v = json!({ "p": a.to_string(), "q": b.to_string() });
            match relation {
                Relation::A => {
                    let w = equiv_a(&a, &b)?;
                    v["relation"] = json!("additive");
                    v["equivalent"] = json!(w.is_some());
                    v["lambda"] = w.map_or(Value::Null, |w| rat(&w.lambda));
                }
                Relation::M => {
                    let w = equiv_m(&a, &b)?;
                    v["relation"] = json!("multiplicative");
                    v["equivalent"] = json!(w.is_some());
                    v["kappa"] = w.map_or(Value::Null, |w| rat(&w.kappa));
                }
            }
            Ok(Output::new(v))
        }
        Cmd::Implicitize { p, q } => {
            let (a, b) = (parse_upoly(p)?, parse_upoly(q)?);
            let c = implicitize(&a, &b)?;
            Ok(Output::new(json!({
                "p": a.display_with("t"),
                "q": b.display_with("t"),
                "variables": "x1 = x, x2 = y",
                "f": poly_value(&c.f),
                "degree": c.f.tdeg(),
                "degree_bound": c.degree_bound,
            })))
        }
        Cmd::LineTest { curve: args } => {
            let c = curve(args)?;
            let v = match line_containment(&c) {
                LineVerdict::NotLine => json!({ "line": false }),
                LineVerdict::Line { alpha, beta, gamma } => {
                    let g = match gamma {
                        LineConstant::Rational(r) => json!({ "rational": rat(&r) }),
                        LineConstant::LogOf(r) => json!({ "log_of": rat(&r) }),
                    };
                    json!({ "line": true, "alpha": rat(&alpha), "beta": rat(&beta), "gamma": g })
                }
            };
            Ok(Output::new(json!({ "curve": curve_value(&c), "verdict": v })))
        }
        Cmd::IntersectTranslate { curve: args, ax, ay } => {
            let c = curve(args)?;
            let shift = Shift::new(parse_constant(ax)?, parse_constant(ay)?);
            let r = translate_intersection_count(&c, &shift)?;
            Ok(Output::new(json!({
                "curve": curve_value(&c),
                "shift": { "ax": rat(&shift.ax), "ay": rat(&shift.ay) },
                "delta": c.delta(),
                "count": r.count,
                "solutions": r.solutions,
                "bound": r.bound,
            })))
        }
        Cmd::CountingLemma { blocks, t } => {
            let part = Partition::parse(blocks)?;
            let hypothesis = hypothesis_holds(&part, *t)?;
            let bound_holds = max_class_bound_check(&part, *t)?;
            let witness = cyclic_shift_witness(&part, *t)?;
            let blocks: Vec<Vec<usize>> = part.blocks().iter().map(|b| one_based(b)).collect();
            Ok(Output::new(json!({
                "d": part.d(),
                "t": t,
                "blocks": blocks,
                "max_block": part.max_block(),
                "hypothesis": hypothesis,
                "bound": class_bound(part.d(), *t),
                "bound_holds": bound_holds,
                "witness": witness.as_ref().map(|w| one_based(w)),
                "fixed_equivalent": witness.as_ref().map(|w| part.fixed_equivalent(w)),
            })))
        }
        Cmd::Expand { poly, sets, list } => expand(poly, sets, *list),
        Cmd::Experiment { spec, t, nmin, nmax, sets, p1, p2, q1, q2, u, v } => {
            let polys = ExperimentPolys { p1, p2, q1, q2, u, v };
            experiment(*spec, *t, *nmin, *nmax, *sets, &polys, seed)
        }
        Cmd::Incidence { curve: args, xs, ys, shifts } => {
            let c = curve(args)?;
            let (xspec, xset) = parse_set(xs)?;
            let (yspec, yset) = parse_set(ys)?;
            let grid = PlanarSet::grid(&xset, &yset);
            let mut curves = Vec::with_capacity(shifts.len());
            for s in shifts {
                let (a, b) = s.split_once(':').ok_or_else(|| bad(format!("shift {s:?} is not ax:ay")))?;
                curves.push((c.clone(), Shift::new(parse_constant(a)?, parse_constant(b)?)));
            }
            let r = incidence_count(&grid, &curves)?;
            Ok(Output::new(json!({
                "curve": curve_value(&c),
                "xs": xspec.to_string(),
                "ys": yspec.to_string(),
                "points": grid.len(),
                "curves": curves.len(),
                "incidences": r.incidences,
                "st_bound": round6(r.st_bound),
            })))
        }
        Cmd::Selftest { only, full, inject_fault } => selftest(only, *full, *inject_fault, seed),
    }
}

fn round6(x: f64) -> Value {
    json!((x * 1e6).round() / 1e6)
}

fn expand(poly: &str, specs: &[String], list: bool) -> Result<Output> {
    let parsed: Vec<(SetSpec, FiniteSet)> = specs.iter().map(|s| parse_set(s)).collect::<Result<_>>()?;
    let mut p = parse_mpoly(poly)?;
    let mut sets: Vec<FiniteSet> = parsed.iter().map(|(_, s)| s.clone()).collect();
    if sets.len() == 1 {
        sets = vec![sets[0].clone(); p.arity()];
    } else if p.arity() < sets.len() {
        p = parse_mpoly_arity(poly, sets.len())?;
    }
    let image = image_set(&p, &sets)?;
    let mut v = json!({
        "poly": poly_value(&p),
        "sets": parsed.iter().map(|(s, _)| s.to_string()).collect::<Vec<_>>(),
        "set_sizes": sets.iter().map(FiniteSet::len).collect::<Vec<_>>(),
        "size": image.len(),
    });
    if list {
        v["elements"] = Value::Array(image.elements().iter().map(rat).collect());
    }
    Ok(Output::new(v))
}

struct ExperimentPolys<'a> {
    p1: &'a Option<String>,
    p2: &'a Option<String>,
    q1: &'a Option<String>,
    q2: &'a Option<String>,
    u: &'a [String],
    v: &'a [String],
}

fn poly_or(arg: &Option<String>, default: &str) -> Result<UniPoly> {
    parse_upoly(arg.as_deref().unwrap_or(default))
}

fn poly_list(arg: &[String], default: impl Fn(usize) -> String, d: usize) -> Result<Vec<UniPoly>> {
    if arg.is_empty() {
        (1..=d).map(|i| parse_upoly(&default(i))).collect()
    } else {
        arg.iter().map(|s| parse_upoly(s)).collect()
    }
}

fn build_spec(kind: ExperimentKind, t: usize, a: &ExperimentPolys) -> Result<ProductSpec> {
    // Defaults use d = t + 1 coordinates.
    let d = t + 1;
    let pair = |dp1: &str, dp2: &str, dq1: &str, dq2: &str| -> Result<[UniPoly; 4]> {
        Ok([poly_or(a.p1, dp1)?, poly_or(a.p2, dp2)?, poly_or(a.q1, dq1)?, poly_or(a.q2, dq2)?])
    };
    Ok(match kind {
        ExperimentKind::SumSum => {
            let [p1, p2, q1, q2] = pair("x", "x", "x^2", "x")?;
            ProductSpec::SumSum { p1, p2, q1, q2 }
        }
        ExperimentKind::ProdProd => {
            let [p1, p2, q1, q2] = pair("x + 1", "x + 1", "x^2 + 1", "x + 1")?;
            ProductSpec::ProdProd { p1, p2, q1, q2 }
        }
        ExperimentKind::SumProd => {
            let [p1, p2, q1, q2] = pair("x", "x", "x", "x")?;
            ProductSpec::SumProd { p1, p2, q1, q2 }
        }
        ExperimentKind::Pdt => {
            let u = poly_list(a.u, |i| format!("x^{i}"), d)?;
            let v = poly_list(a.v, |i| format!("x^{}", d + 1 - i), d)?;
            ProductSpec::AdditivePair { u, v, t }
        }
        ExperimentKind::PdtMult => {
            let u = poly_list(a.u, |i| format!("x + {i}"), d)?;
            let v = poly_list(a.v, |i| format!("x^2 + {i}"), d)?;
            ProductSpec::MultiplicativePair { u, v, t }
        }
        ExperimentKind::Mixed => {
            let u = poly_list(a.u, |i| format!("x^{i}"), d)?;
            let v = poly_list(a.v, |i| format!("x + {i}"), d)?;
            ProductSpec::Mixed { u, v }
        }
    })
}

fn spec_polys(spec: &ProductSpec) -> Value {
    let list = |ps: &[UniPoly]| ps.iter().map(|p| p.to_string()).collect::<Vec<_>>();
    match spec {
        ProductSpec::SumSum { p1, p2, q1, q2 }
        | ProductSpec::ProdProd { p1, p2, q1, q2 }
        | ProductSpec::SumProd { p1, p2, q1, q2 } => json!({
            "p1": p1.to_string(), "p2": p2.to_string(), "q1": q1.to_string(), "q2": q2.to_string(),
        }),
        ProductSpec::AdditivePair { u, v, .. }
        | ProductSpec::MultiplicativePair { u, v, .. }
        | ProductSpec::Mixed { u, v } => json!({ "u": list(u), "v": list(v) }),
    }
}

fn experiment_sets(kind: SetKindArg, n: usize, arity: usize, seed: u64) -> Result<Vec<FiniteSet>> {
    let one = Rational::from_integer(1.into());
    let two = Rational::from_integer(2.into());
    (0..arity)
        .map(|i| match kind {
            SetKindArg::Ap => gen_set(SetKind::Ap, n, &one, &one, 0),
            SetKindArg::Gp => gen_set(SetKind::Gp, n, &one, &two, 0),
            SetKindArg::Rand => gen_set(SetKind::Random, n, &one, &one, seed.wrapping_add(i as u64)),
        })
        .collect()
}

fn experiment(
    kind: ExperimentKind,
    t: usize,
    nmin: usize,
    nmax: usize,
    sets: SetKindArg,
    polys: &ExperimentPolys,
    seed: u64,
) -> Result<Output> {
    if nmin == 0 || nmin > nmax {
        return Err(bad(format!("need 1 <= nmin <= nmax, got nmin={nmin}, nmax={nmax}")));
    }
    if t == 0 {
        return Err(bad("t must be positive"));
    }
    let spec = build_spec(kind, t, polys)?;
    let mut inputs = Vec::new();
    let mut n = nmin;
    while n <= nmax {
        inputs.push(experiment_sets(sets, n, spec.arity(), seed)?);
        n = n.checked_mul(2).ok_or_else(|| bad("nmax too large"))?;
    }
    let report = product_bound_experiment(&spec, &inputs)?;
    Ok(report_output(&spec, sets, &report))
}

fn report_output(spec: &ProductSpec, sets: SetKindArg, report: &ExpansionReport) -> Output {
    let samples: Vec<Value> = report
        .samples
        .iter()
        .map(|s| {
            json!({
                "n": s.n,
                "size": s.size,
                "bound": round6(s.bound),
                "ratio": round6(s.ratio),
                "meets_bound": s.meets_bound,
            })
        })
        .collect();
    let fit = report.fit.as_ref().map(|f| json!({ "slope": rat(&f.slope), "constant": rat(&f.constant) }));
    let value = json!({
        "spec": spec.name(),
        "polynomials": spec_polys(spec),
        "sets": format!("{sets:?}").to_lowercase(),
        "target_exponent": rat(&report.target_exponent),
        "samples": samples,
        "fit": fit,
        "all_meet_bound": report.samples.iter().all(|s| s.meets_bound),
    });
    let rows = report
        .samples
        .iter()
        .map(|s| vec![s.n.to_string(), s.size.to_string(), format!("{:.6}", s.bound), format!("{:.6}", s.ratio)])
        .collect();
    let mut out = Output::new(value);
    out.table = Some((vec!["n", "size", "bound", "ratio"], rows));
    out
}

fn selftest(only: &[String], full: bool, fault: Option<u32>, seed: u64) -> Result<Output> {
    let ids = only
        .iter()
        .map(|name| criterion_by_name(name.trim()).ok_or_else(|| bad(format!("unknown criterion {name:?}"))))
        .collect::<Result<Vec<u32>>>()?;
    let scale = if full { Scale::Full } else { Scale::Reduced };
    let opts = Options { scale, seed, fault };
    let outcomes = run_selected(&opts, &ids);
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let mut lines: Vec<String> = outcomes.iter().map(|o| o.to_string()).collect();
    lines.push(format!("{passed}/{} criteria passed", outcomes.len()));
    let value = json!({
        "scale": if full { "full" } else { "reduced" },
        "outcomes": outcomes
            .iter()
            .map(|o| json!({ "id": o.id, "name": o.name, "passed": o.passed, "detail": o.detail }))
            .collect::<Vec<_>>(),
        "passed": passed == outcomes.len(),
    });
    let mut out = Output::new(value);
    out.table = Some((
        vec!["id", "name", "passed", "detail"],
        outcomes.iter().map(|o| vec![o.id.to_string(), o.name.to_string(), o.passed.to_string(), o.detail.clone()]).collect(),
    ));
    out.lines = Some(lines);
    out.success = passed == outcomes.len();
    Ok(out)
}
