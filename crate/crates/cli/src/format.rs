//! Fixed-precision number formatting shared by the OBJ and CSV writers.

/// Shortest rendering of `x` with 17 significant digits, like C's `%.17g`:
/// trailing zeros are dropped, exponents outside `[-4, 17)` use `e±XX`.
/// Negative zero prints as `0`. The result parses back to `x` exactly.
pub fn g17(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..17).contains(&exp) {
        let fixed = format!("{:.*}", (16 - exp) as usize, x);
        trim_fraction(&fixed).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_fraction(mantissa), sign, exp.abs())
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::g17;

    #[test]
    fn integers_and_signs() {
        assert_eq!(g17(4.0), "4");
        assert_eq!(g17(-6.0), "-6");
        assert_eq!(g17(-0.0), "0");
        assert_eq!(g17(0.5), "0.5");
    }

    #[test]
    fn matches_printf() {
        assert_eq!(g17(std::f64::consts::SQRT_2), "1.4142135623730951");
        assert_eq!(g17(0.1), "0.10000000000000001");
        assert_eq!(g17(1e-5), "1.0000000000000001e-05");
        assert_eq!(g17(1e20), "1e+20");
        assert_eq!(g17(123456.0), "123456");
        assert_eq!(g17(0.0001), "0.0001");
    }

    #[test]
    fn round_trips() {
        for &x in &[1.0 / 3.0, -2.5e-300, 6.02214076e23, std::f64::consts::PI, 1e16, 12345678901234567.0] {
            assert_eq!(g17(x).parse::<f64>().unwrap(), x);
        }
    }
}
