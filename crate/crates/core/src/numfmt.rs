//! Number formatting for human-readable reports.

use crate::operator::EPS;

/// Maps values within [`EPS`] of zero (including `-0.0`) to `0.0`.
pub fn snap(x: f64) -> f64 {
    if x.abs() <= EPS {
        0.0
    } else {
        x
    }
}

/// `x` rounded to `digits` significant digits, after [`snap`]. Switches to
/// scientific notation outside `[1e-4, 1e6)`.
pub fn format_sig(x: f64, digits: usize) -> String {
    let x = snap(x);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let digits = digits.max(1);
    let exponent = x.abs().log10().floor() as i32;
    if !(-4..6).contains(&exponent) {
        return format!("{:.*e}", digits - 1, x);
    }
    let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // Rounding can carry into a new leading digit (9.999995 -> 10.00000).
    if s.trim_start_matches('-')
        .split('.')
        .next()
        .map_or(0, str::len)
        > (exponent + 1).max(1) as usize
        && decimals > 0
    {
        return format!("{x:.prec$}", prec = decimals - 1);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(format_sig(0.25, 6), "0.250000");
        assert_eq!(format_sig(-0.25, 6), "-0.250000");
        assert_eq!(format_sig(0.75, 6), "0.750000");
        assert_eq!(format_sig(1.0, 6), "1.00000");
        assert_eq!(format_sig(123.456789, 6), "123.457");
        assert_eq!(format_sig(-0.10355339059327379, 6), "-0.103553");
        assert_eq!(format_sig(9.9999996, 6), "10.0000");
        assert_eq!(format_sig(1.5e-7, 3), "1.50e-7");
    }

    #[test]
    fn snaps_round_off_and_negative_zero() {
        assert_eq!(format_sig(-0.0, 6), "0");
        assert_eq!(format_sig(2.7e-17, 6), "0");
        assert_eq!(snap(-1e-13), 0.0);
        assert_eq!(snap(0.5), 0.5);
    }
}
