/// Quintic Hermite interpolation from values, first and second derivatives
/// at the ends of an interval of width `h`; `t` is the fraction in `[0, 1]`.
#[allow(clippy::too_many_arguments)]
pub fn quintic(t: f64, h: f64, y0: f64, d0: f64, s0: f64, y1: f64, d1: f64, s1: f64) -> f64 {
    let t2 = t * t;
    let t3 = t2 * t;
    let t4 = t3 * t;
    let t5 = t4 * t;
    let h00 = 1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5;
    let h10 = t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5;
    let h20 = 0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5;
    let h21 = 0.5 * t3 - t4 + 0.5 * t5;
    let h11 = -4.0 * t3 + 7.0 * t4 - 3.0 * t5;
    let h01 = 10.0 * t3 - 15.0 * t4 + 6.0 * t5;
    y0 * h00 + h * d0 * h10 + h * h * (s0 * h20 + s1 * h21) + h * d1 * h11 + y1 * h01
}
