//! Clebsch-Gordan coefficients from the Racah closed-form sum, evaluated in
//! exact rational arithmetic. Spins are passed doubled (2j, 2m).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const MAX_TWO_J: i64 = 40;

fn fact(n: i64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn half_int(x: f64, what: &str) -> Result<i64> {
    let d = 2.0 * x;
    let r = d.round();
    if (d - r).abs() > 1e-9 || !d.is_finite() {
        return Err(Error::InvalidSpin(format!(
            "{what} = {x} is not a multiple of 1/2"
        )));
    }
    Ok(r as i64)
}

/// Exact value as (sign, C^2) with sign in {-1, 0, 1}.
pub fn cg_exact(
    tj1: i64,
    tm1: i64,
    tj2: i64,
    tm2: i64,
    tj: i64,
    tm: i64,
) -> Result<(i32, BigRational)> {
    for (j, m, name) in [(tj1, tm1, "j1"), (tj2, tm2, "j2"), (tj, tm, "J")] {
        if j < 0 {
            return Err(Error::InvalidSpin(format!("{name} is negative")));
        }
        if j > MAX_TWO_J {
            return Err(Error::InvalidSpin(format!("{name} exceeds 20")));
        }
        if (j + m) % 2 != 0 {
            return Err(Error::InvalidSpin(format!(
                "{name} and its projection differ in half-integer parity"
            )));
        }
    }
    if (tj1 + tj2 + tj) % 2 != 0 {
        return Err(Error::InvalidSpin("j1 + j2 + J is not an integer".into()));
    }
    let zero = (0, BigRational::zero());
    if tm != tm1 + tm2 || tm1.abs() > tj1 || tm2.abs() > tj2 || tm.abs() > tj {
        return Ok(zero);
    }
    if tj < (tj1 - tj2).abs() || tj > tj1 + tj2 {
        return Ok(zero);
    }
    // integer arguments of the factorials
    let a = (tj1 + tj2 - tj) / 2;
    let b = (tj1 - tm1) / 2;
    let c = (tj2 + tm2) / 2;
    let d = (tj - tj2 + tm1) / 2;
    let e = (tj - tj1 - tm2) / 2;
    let kmin = 0.max(-d).max(-e);
    let kmax = a.min(b).min(c);
    let mut sum = BigRational::zero();
    for k in kmin..=kmax {
        let den = fact(k) * fact(a - k) * fact(b - k) * fact(c - k) * fact(d + k) * fact(e + k);
        let term = BigRational::new(BigInt::one(), den);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    if sum.is_zero() {
        return Ok(zero);
    }
    let pre_num = BigInt::from(tj + 1)
        * fact((tj + tj1 - tj2) / 2)
        * fact((tj - tj1 + tj2) / 2)
        * fact((tj1 + tj2 - tj) / 2)
        * fact((tj + tm) / 2)
        * fact((tj - tm) / 2)
        * fact((tj1 - tm1) / 2)
        * fact((tj1 + tm1) / 2)
        * fact((tj2 - tm2) / 2)
        * fact((tj2 + tm2) / 2);
    let pre_den = fact((tj1 + tj2 + tj) / 2 + 1);
    let sign = if sum.is_positive() { 1 } else { -1 };
    let sq = BigRational::new(pre_num, pre_den) * &sum * &sum;
    Ok((sign, sq))
}

fn rational_to_f64(r: &BigRational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // scale down very large numerators/denominators before dividing
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(900);
            let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (r.denom() >> shift).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

/// <j1 m1; j2 m2 | J M> with doubled integer arguments.
pub fn cg2(tj1: i64, tm1: i64, tj2: i64, tm2: i64, tj: i64, tm: i64) -> Result<f64> {
    let (s, sq) = cg_exact(tj1, tm1, tj2, tm2, tj, tm)?;
    Ok(s as f64 * rational_to_f64(&sq).sqrt())
}

/// <j1 m1; j2 m2 | J M> with half-integer arguments given as floats.
pub fn clebsch_gordan(j1: f64, m1: f64, j2: f64, m2: f64, j: f64, m: f64) -> Result<f64> {
    cg2(
        half_int(j1, "j1")?,
        half_int(m1, "m1")?,
        half_int(j2, "j2")?,
        half_int(m2, "m2")?,
        half_int(j, "J")?,
        half_int(m, "M")?,
    )
}
