use super::{q_number_pow_neg, qzeta_binomial_ac, Weights};
use crate::error::{Error, Result};
use crate::qnum::{is_nonpositive_integer, QParam};
use crate::types::{ComplexValue, EvalResult, Method, TruncationPolicy};

/// `zeta_{q,r}(s,t,z) = q^(t-r+1) zeta_{q,r}(s,t,z+1) + zeta_{q,r-1}(s,t,z)`
/// with `zeta_{q,0}(s,t,z) = [z]_q^(-s)`, applied until `Re(z) > 0` (unit weights).
pub fn qzeta_ladder(
    r: usize,
    q: QParam,
    s: ComplexValue,
    t: ComplexValue,
    z: ComplexValue,
    policy: &TruncationPolicy,
) -> Result<EvalResult> {
    const OP: &str = "qzeta_ladder";
    if r == 0 {
        let v = q_number_pow_neg(OP, q, z, s)?;
        return Ok(EvalResult::new(v, 4.0 * f64::EPSILON * v.norm(), Method::QZetaLadder));
    }
    if z.re > 0.0 {
        return qzeta_binomial_ac(r, q, s, t, z, &Weights::ones(r), policy);
    }
    if is_nonpositive_integer(z) {
        return Err(Error::Singular {
            op: OP,
            detail: format!("z = {z} is a nonpositive integer"),
        });
    }
    let factor = q.pow(t - (r as f64 - 1.0));
    let upper = qzeta_ladder(r, q, s, t, z + 1.0, policy)?;
    let lower = qzeta_ladder(r - 1, q, s, t, z, policy)?;
    let value = factor * upper.value + lower.value;
    let err = factor.norm() * upper.abs_err + lower.abs_err + 4.0 * f64::EPSILON * value.norm();
    Ok(EvalResult::new(value, err, Method::QZetaLadder))
}
