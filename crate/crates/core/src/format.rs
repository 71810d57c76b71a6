//! Text formatting shared by the CSV writers and the command line.

/// Formats a float with 17 significant digits, which is enough to
/// reproduce every `f64` bit pattern on parse. Zero prints as `0`.
pub fn fmt17(value: f64) -> String {
    if value == 0.0 {
        // covers -0.0 as well
        "0".to_string()
    } else {
        format!("{value:.16e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_is_bare() {
        assert_eq!(fmt17(0.0), "0");
        assert_eq!(fmt17(-0.0), "0");
    }

    #[test]
    fn round_trips_bits() {
        for v in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, f64::MIN_POSITIVE] {
            let back: f64 = fmt17(v).parse().unwrap();
            assert_eq!(back.to_bits(), v.to_bits());
        }
    }
}
