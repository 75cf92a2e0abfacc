//! Grid export as CSV.

use std::fmt::Write;

use parhyp_core::Sample;

/// `v` rounded to 17 significant digits. Positional notation is used for
/// moderate exponents, scientific notation otherwise.
pub fn format_sig17(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    if v == 0.0 {
        return "0.0000000000000000".to_string();
    }
    let sci = format!("{v:.16e}");
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    if (-5..17).contains(&exp) {
        format!("{:.*}", (16 - exp) as usize, v)
    } else {
        sci
    }
}

/// Header `x,y,region,u`, one row per sample in the given order, LF endings.
pub fn emit_csv(samples: &[Sample]) -> Vec<u8> {
    let mut s = String::from("x,y,region,u\n");
    for p in samples {
        writeln!(s, "{},{},{},{}", p.x, p.y, p.region, format_sig17(p.u)).unwrap();
    }
    s.into_bytes()
}
