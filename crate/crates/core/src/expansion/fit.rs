//! Least-squares growth exponents.

use num_bigint::BigInt;

use crate::error::{precondition, Result};
use crate::Rational;

/// Denominator of the reported slope.
pub const SLOPE_DENOMINATOR: i64 = 1000;
/// Denominator of the reported constant.
pub const CONSTANT_DENOMINATOR: i64 = 1 << 16;

/// `size ~ constant * n^slope`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fit {
    pub slope: Rational,
    pub constant: Rational,
}

fn round_to(v: f64, den: i64) -> Rational {
    Rational::new(BigInt::from((v * den as f64).round() as i64), BigInt::from(den))
}

/// Fits a line through `(ln n, ln size)`. The slope is rounded to a multiple
/// of 1/1000 and the constant `e^intercept` to a multiple of 2^-16.
pub fn fit_exponent(samples: &[(u64, u64)]) -> Result<Fit> {
    if samples.len() < 3 {
        return precondition("exponent fit needs at least three samples");
    }
    if samples.windows(2).any(|w| w[0].0 >= w[1].0) || samples[0].0 == 0 {
        return precondition("sample sizes n must be positive and strictly increasing");
    }
    if samples.iter().any(|s| s.1 == 0) {
        return precondition("measured sizes must be positive");
    }
    let k = samples.len() as f64;
    let xs: Vec<f64> = samples.iter().map(|s| (s.0 as f64).ln()).collect();
    let ys: Vec<f64> = samples.iter().map(|s| (s.1 as f64).ln()).collect();
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    Ok(Fit { slope: round_to(slope, SLOPE_DENOMINATOR), constant: round_to(intercept.exp(), CONSTANT_DENOMINATOR) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn examples() {
        let f = fit_exponent(&[(2, 4), (4, 16), (8, 64)]).unwrap();
        assert_eq!(f.slope, int(2));
        assert_eq!(f.constant, int(1));
        // Equally spaced abscissae: the slope is ln(15/3) / ln(8/2).
        let oracle = (5f64.ln() / 4f64.ln() * 1000.0).round() as i64;
        assert_eq!(oracle, 1161);
        assert_eq!(fit_exponent(&[(2, 3), (4, 7), (8, 15)]).unwrap().slope, rat(oracle, 1000));
        let f = fit_exponent(&[(2, 2), (4, 2), (8, 2)]).unwrap();
        assert_eq!(f.slope, int(0));
        assert_eq!(f.constant, int(2));
    }

    #[test]
    fn degenerate() {
        assert!(fit_exponent(&[(2, 4), (4, 16)]).is_err());
        assert!(fit_exponent(&[(2, 4), (2, 16), (8, 1)]).is_err());
        assert!(fit_exponent(&[(2, 4), (4, 0), (8, 1)]).is_err());
    }
}
