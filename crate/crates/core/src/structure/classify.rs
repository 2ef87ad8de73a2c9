//! Expander / exceptional verdicts for single polynomials and pairs.

use num_traits::One;

use super::decompose::{detect_additive, detect_multiplicative, Decomposition, DecompositionKind};
use super::equiv::{equiv_a, equiv_m};
use crate::error::{precondition, Error, Result};
use crate::scalar::{pow_i64, Rational};
use crate::{MultiPoly, UniPoly};

/// `3/2 - 1/2^(t+1)`.
pub fn expander_exponent(t: usize) -> Rational {
    Rational::new(3.into(), 2.into()) - pow_i64(&Rational::new(1.into(), 2.into()), t as i64 + 1)
}

/// Required size of an exceptional index set: `d - floor((t-1)/2)`.
pub fn exceptional_size(d: usize, t: usize) -> usize {
    d - (t - 1) / 2
}

/// Witness `c` relating inner parts `i` and `j`: `u_i = c u_j` for additive
/// forms and `|u_i| = |u_j|^c` for multiplicative ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairWitness {
    pub i: usize,
    pub j: usize,
    pub constant: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Expander {
        exponent: Rational,
    },
    Exceptional {
        decomposition: Decomposition,
        classes: Vec<Vec<usize>>,
        /// The class of size at least `exceptional_size(d, t)`.
        index_set: Vec<usize>,
        witnesses: Vec<PairWitness>,
    },
}

impl Verdict {
    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::Expander { .. } => "expander",
            Verdict::Exceptional { decomposition, .. } => match decomposition.kind {
                DecompositionKind::Additive => "exceptional-additive",
                DecompositionKind::Multiplicative => "exceptional-multiplicative",
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairVerdict {
    Expander {
        exponent: Rational,
    },
    Exceptional {
        kind: DecompositionKind,
        p: Decomposition,
        q: Decomposition,
        mismatch: Vec<usize>,
        /// Per coordinate outside the mismatch set, relating `v_i` (from Q) to `u_i`.
        witnesses: Vec<PairWitness>,
    },
}

impl PairVerdict {
    pub fn tag(&self) -> &'static str {
        match self {
            PairVerdict::Expander { .. } => "expander",
            PairVerdict::Exceptional { kind: DecompositionKind::Additive, .. } => "exceptional-additive-pair",
            PairVerdict::Exceptional { kind: DecompositionKind::Multiplicative, .. } => {
                "exceptional-multiplicative-pair"
            }
        }
    }
}

fn related(kind: DecompositionKind, a: &UniPoly, b: &UniPoly) -> Result<Option<Rational>> {
    Ok(match kind {
        DecompositionKind::Additive => equiv_a(a, b)?.map(|w| w.lambda),
        DecompositionKind::Multiplicative => equiv_m(a, b)?.map(|w| w.kappa),
    })
}

/// Runs both detectors; at most one may succeed.
pub fn decompose(p: &MultiPoly) -> Result<Option<Decomposition>> {
    let add = detect_additive(p)?;
    let mul = detect_multiplicative(p)?;
    match (add, mul) {
        (Some(_), Some(_)) => Err(Error::Internal("polynomial detected as both additive and multiplicative".into())),
        (a, m) => Ok(a.or(m)),
    }
}

/// Partition of the coordinates by equivalence of inner parts, each class
/// sorted and classes ordered by their smallest member.
pub fn equivalence_classes(dec: &Decomposition) -> Result<Vec<Vec<usize>>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    'outer: for (i, u) in dec.inner.iter().enumerate() {
        for class in classes.iter_mut() {
            if related(dec.kind, u, &dec.inner[class[0]])?.is_some() {
                class.push(i);
                continue 'outer;
            }
        }
        classes.push(vec![i]);
    }
    Ok(classes)
}

fn check_t(d: usize, t: usize) -> Result<()> {
    if d < 2 || t < 1 || t >= d {
        return precondition(format!("need d >= 2 and 1 <= t <= d-1, got d={d}, t={t}"));
    }
    Ok(())
}

/// Classifies one polynomial. Exceptional index sets have exactly
/// `d - floor((t-1)/2)` elements, taken as the smallest members of the first
/// large enough class.
pub fn classify_single(p: &MultiPoly, t: usize) -> Result<Verdict> {
    let d = p.arity();
    check_t(d, t)?;
    let expander = Verdict::Expander { exponent: expander_exponent(t) };
    let Some(dec) = decompose(p)? else {
        return Ok(expander);
    };
    let need = exceptional_size(d, t);
    let classes = equivalence_classes(&dec)?;
    let Some(class) = classes.iter().find(|c| c.len() >= need) else {
        return Ok(expander);
    };
    // At most one class can reach the threshold, which exceeds d/2.
    let index_set = class.clone();
    let mut witnesses = Vec::new();
    for (a, &i) in index_set.iter().enumerate() {
        for &j in &index_set[a + 1..] {
            let c = related(dec.kind, &dec.inner[i], &dec.inner[j])?
                .ok_or_else(|| Error::Internal("equivalence class is not transitive".into()))?;
            witnesses.push(PairWitness { i, j, constant: c });
        }
    }
    Ok(Verdict::Exceptional { decomposition: dec, classes, index_set, witnesses })
}

/// Classifies a pair of polynomials in the same variables.
pub fn classify_pair(p: &MultiPoly, q: &MultiPoly, t: usize) -> Result<PairVerdict> {
    let d = p.arity();
    if q.arity() != d {
        return precondition("pair classification needs polynomials of equal arity");
    }
    check_t(d, t)?;
    let expander = PairVerdict::Expander { exponent: expander_exponent(t) };
    let (Some(dp), Some(dq)) = (decompose(p)?, decompose(q)?) else {
        return Ok(expander);
    };
    if dp.kind != dq.kind {
        return Ok(expander);
    }
    let mut mismatch = Vec::new();
    let mut witnesses = Vec::new();
    for i in 0..d {
        match related(dp.kind, &dq.inner[i], &dp.inner[i])? {
            Some(c) => witnesses.push(PairWitness { i, j: i, constant: c }),
            None => mismatch.push(i),
        }
    }
    if mismatch.len() >= t {
        return Ok(expander);
    }
    Ok(PairVerdict::Exceptional { kind: dp.kind, p: dp, q: dq, mismatch, witnesses })
}

/// Whether every witness constant is one.
pub fn trivial_witnesses(w: &[PairWitness]) -> bool {
    w.iter().all(|w| w.constant.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::parse_mpoly;
    use crate::scalar::{int, rat};

    fn mp(s: &str) -> MultiPoly {
        parse_mpoly(s).unwrap()
    }

    #[test]
    fn exponent_values() {
        assert_eq!(expander_exponent(1), rat(5, 4));
        assert_eq!(expander_exponent(2), rat(11, 8));
        assert_eq!(exceptional_size(2, 1), 2);
        assert_eq!(exceptional_size(5, 4), 4);
    }

    #[test]
    fn single_examples() {
        assert_eq!(classify_single(&mp("x+y^2"), 1).unwrap(), Verdict::Expander { exponent: rat(5, 4) });
        match classify_single(&mp("(x+y)^3"), 1).unwrap() {
            Verdict::Exceptional { decomposition, index_set, witnesses, .. } => {
                assert_eq!(decomposition.kind, DecompositionKind::Additive);
                assert_eq!(index_set, vec![0, 1]);
                assert_eq!(witnesses, vec![PairWitness { i: 0, j: 1, constant: int(1) }]);
            }
            v => panic!("unexpected {v:?}"),
        }
        assert_eq!(classify_single(&mp("x1+x2+x3^2"), 1).unwrap().tag(), "expander");
        // Threshold 3 for d = 4, t = 3; the whole class of four is reported.
        match classify_single(&mp("(x1+x2+x3+x4)^2"), 3).unwrap() {
            Verdict::Exceptional { index_set, witnesses, .. } => {
                assert_eq!(index_set, vec![0, 1, 2, 3]);
                assert_eq!(witnesses.len(), 6);
            }
            v => panic!("unexpected {v:?}"),
        }
        match classify_single(&mp("(x1+x2+x3+x4^2)^2"), 3).unwrap() {
            Verdict::Exceptional { index_set, classes, .. } => {
                assert_eq!(index_set, vec![0, 1, 2]);
                assert_eq!(classes, vec![vec![0, 1, 2], vec![3]]);
            }
            v => panic!("unexpected {v:?}"),
        }
        // (x1+1)(x2+1) - 1
        assert_eq!(classify_single(&mp("x1*x2+x1+x2"), 1).unwrap().tag(), "exceptional-multiplicative");
        assert_eq!(classify_single(&mp("(x1 x2^2)^2 + 1"), 1).unwrap().tag(), "exceptional-multiplicative");
        assert_eq!(classify_single(&mp("(x1 (x2^2+1))^2 + 1"), 1).unwrap().tag(), "expander");
            }

    #[test]
    fn pair_examples() {
        assert_eq!(
            classify_pair(&mp("x+y"), &mp("x+y^2"), 1).unwrap(),
            PairVerdict::Expander { exponent: rat(5, 4) }
        );
        match classify_pair(&mp("x+y"), &mp("2x+2y"), 1).unwrap() {
            PairVerdict::Exceptional { kind, mismatch, .. } => {
                assert_eq!(kind, DecompositionKind::Additive);
                assert!(mismatch.is_empty());
            }
            v => panic!("unexpected {v:?}"),
        }
        match classify_pair(&mp("x*y"), &mp("x^2*y^2"), 1).unwrap() {
            PairVerdict::Exceptional { kind, mismatch, witnesses, .. } => {
                assert_eq!(kind, DecompositionKind::Multiplicative);
                assert!(mismatch.is_empty());
                assert!(witnesses.iter().all(|w| w.constant == int(2)));
            }
            v => panic!("unexpected {v:?}"),
        }
        assert_eq!(classify_pair(&mp("x+y"), &mp("x*y"), 1).unwrap().tag(), "expander");
    }

    #[test]
    fn preconditions() {
        assert!(classify_single(&mp("x+y"), 2).is_err());
        assert!(classify_single(&mp("x+y"), 0).is_err());
        assert!(classify_pair(&mp("x+y"), &mp("x+y+z"), 1).is_err());
    }
}
