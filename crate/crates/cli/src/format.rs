//! Locale-independent, deterministic number formatting.

/// `v` as a decimal string with 9 significant digits.  Positional notation
/// inside a sane exponent range, scientific outside it.
pub fn sig9(v: f64) -> String {
    sig(v, 9)
}

/// `v` rounded (half-even) to `digits` significant digits.
pub fn sig(v: f64, digits: u32) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let exp = v.abs().log10().floor() as i32;
    if !(-5..13).contains(&exp) {
        return format!("{:.*e}", digits as usize - 1, v);
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    let s = format!("{v:.decimals$}");
    // Re-derive the exponent: rounding can carry (0.99995 -> 1.0000).
    let r: f64 = s.parse().unwrap();
    if r != 0.0 && (r.abs().log10().floor() as i32) != exp {
        let decimals = (digits as i32 - 2 - exp).max(0) as usize;
        return format!("{v:.decimals$}");
    }
    s
}

/// Published-table style: 6 significant digits with trailing zeros trimmed.
pub fn sig6_trimmed(v: f64) -> String {
    let s = sig(v, 6);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Six decimal places for ordinary magnitudes; bounds below `1e-3` switch
/// to scientific notation with 3 significant digits.
pub fn table_value(v: f64) -> String {
    if v != 0.0 && v.abs() < 1e-3 {
        format!("{v:.2e}")
    } else {
        format!("{v:.6}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig9_shapes() {
        assert_eq!(sig9(1.3203236323752359), "1.32032363");
        assert_eq!(sig9(0.06713930283762853), "0.0671393028");
        assert_eq!(sig9(0.6515157437576835), "0.651515744");
        assert_eq!(sig9(1.5600604559163543e-18), "1.56006046e-18");
        assert_eq!(sig9(0.0), "0");
        assert_eq!(sig9(100_000_000.0), "100000000");
    }

    #[test]
    fn sig6_matches_table_style() {
        assert_eq!(sig6_trimmed(1.3203236323752359), "1.32032");
        assert_eq!(sig6_trimmed(1.3832003766), "1.3832");
        assert_eq!(sig6_trimmed(3.5208630196672955), "3.52086");
        assert_eq!(sig6_trimmed(1.9560350109262756), "1.95604");
    }

    #[test]
    fn table_values() {
        assert_eq!(table_value(0.067139302), "0.067139");
        assert_eq!(table_value(0.6515157437), "0.651516");
        assert_eq!(table_value(1.5600604e-18), "1.56e-18");
        assert_eq!(table_value(0.004594364), "0.004594");
        assert_eq!(table_value(0.0), "0.000000");
    }

    #[test]
    fn rounding_carry() {
        assert_eq!(sig(0.99999999999, 6), "1.00000");
        assert_eq!(sig6_trimmed(0.99999999999), "1");
    }
}
