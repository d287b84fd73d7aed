//! Integer and list arguments in the forms people type: `1000000`, `1_000_000`,
//! `1e6`, `2.5e3`, `10^6`, `2^26`.

/// Parses a non-negative integer. Mantissa-exponent forms must be exact.
pub fn parse_u64(s: &str) -> Result<u64, String> {
    let t = s.trim().replace('_', "");
    if t.is_empty() {
        return Err("empty number".into());
    }
    if t.starts_with('-') {
        return Err(format!("{s:?} is negative"));
    }
    if let Some((base, exp)) = t.split_once('^') {
        let base: u64 = base.parse().map_err(|_| format!("bad base in {s:?}"))?;
        let exp: u32 = exp.parse().map_err(|_| format!("bad exponent in {s:?}"))?;
        return base
            .checked_pow(exp)
            .ok_or_else(|| format!("{s:?} does not fit in 64 bits"));
    }
    if let Some((mant, exp)) = t.split_once(['e', 'E']) {
        let exp: u32 = exp.parse().map_err(|_| format!("bad exponent in {s:?}"))?;
        let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
        if int.is_empty() && frac.is_empty() {
            return Err(format!("bad mantissa in {s:?}"));
        }
        let frac = frac.trim_end_matches('0');
        let shift = exp
            .checked_sub(frac.len() as u32)
            .ok_or_else(|| format!("{s:?} is not an integer"))?;
        let digits: u64 = format!("{int}{frac}")
            .parse()
            .map_err(|_| format!("bad mantissa in {s:?}"))?;
        return 10u64
            .checked_pow(shift)
            .and_then(|p| digits.checked_mul(p))
            .ok_or_else(|| format!("{s:?} does not fit in 64 bits"));
    }
    t.parse().map_err(|_| format!("{s:?} is not a non-negative integer"))
}

/// A positive integer.
pub fn parse_positive(s: &str) -> Result<u64, String> {
    match parse_u64(s)? {
        0 => Err(format!("{s:?} must be positive")),
        v => Ok(v),
    }
}

/// A finite, non-negative float.
pub fn parse_nonneg_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("{s:?} is not a number"))?;
    if v.is_finite() && v >= 0.0 {
        Ok(v)
    } else {
        Err(format!("{s:?} must be finite and >= 0"))
    }
}
