//! Intrinsic curvature errors of spin-ensemble loops and their large-`N`
//! limits.

use num_complex::Complex64;

use super::algebra::{overlap_probability, EnsembleSize, StereoLabel};
use crate::error::{invalid, Result};

/// Closed-form error figures for a square loop of side `ζ_n` on `N` spins.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorPoint {
    pub zeta_n: f64,
    pub n_spins: EnsembleSize,
    /// Geometric phase actually acquired by the extremal branch.
    pub phi_f: f64,
    /// Fractional phase error `(ζ_n² − φ_f)/ζ_n²`.
    pub phi_e: f64,
    /// `1 − (1 + 8u³/(1+u)⁴)^{−N}`, `u = ζ_n²/2N`.
    pub infidelity: f64,
    /// `1 − (1 − 8u³/(1+u)⁴)^N`, the exact return infidelity of the extremal
    /// branch. Agrees with [`ErrorPoint::infidelity`] through `O(u⁵)`.
    pub infidelity_exact: f64,
    /// `ζ_n² − ζ_n⁴/N`
    pub phi_series: f64,
    /// `ζ_n⁶/N²`
    pub infid_series: f64,
}

/// `ζ_n² − φ_f` without cancellation.
fn phase_deficit(u: f64, n: f64) -> f64 {
    let den = 1.0 + 2.0 * u - u * u;
    if den <= 0.0 {
        return 2.0 * u * n - n * (2.0 * u).atan2(den);
    }
    let y = 2.0 * u / den;
    // 2u − y = 2u²(2 − u)/den
    let head = 2.0 * u * u * (2.0 - u) / den;
    let tail = if y < 1e-3 {
        let y2 = y * y;
        y * y2 * (1.0 / 3.0 - y2 * (1.0 / 5.0 - y2 * (1.0 / 7.0 - y2 / 9.0)))
    } else {
        y - y.atan()
    };
    n * (head + tail)
}

pub fn fan_error(zeta_n: f64, n_spins: EnsembleSize) -> ErrorPoint {
    let n = n_spins.as_f64();
    let z2 = zeta_n * zeta_n;
    let u = z2 / (2.0 * n);
    let phi_f = n * (2.0 * u).atan2(1.0 + 2.0 * u - u * u);
    let deficit = phase_deficit(u, n);
    let curvature = 8.0 * u.powi(3) / (1.0 + u).powi(4);
    ErrorPoint {
        zeta_n,
        n_spins,
        phi_f,
        phi_e: if z2 > 0.0 { deficit / z2 } else { 0.0 },
        infidelity: -(-n * curvature.ln_1p()).exp_m1(),
        infidelity_exact: -(n * (-curvature).ln_1p()).exp_m1(),
        phi_series: z2 - z2 * z2 / n,
        infid_series: z2.powi(3) / (n * n),
    }
}

/// One row of the large-`N` comparison between the spin ensemble and a
/// field mode.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContractionRow {
    pub n_spins: EnsembleSize,
    /// Square-loop phase with side `|ζ|`.
    pub phi_f: f64,
    /// `||ζ|² − φ_f|`
    pub abs_err_phi: f64,
    /// `|⟨0|ζ/√(2N)⟩_N|²`
    pub overlap: f64,
    /// Distance of the overlap from `e^{−|ζ|²/2}`.
    pub abs_err_overlap: f64,
    /// `atan(r)/r` with `r = |ζ|/√(2N)`.
    pub prefactor: f64,
}

pub fn contraction_probe(zeta: Complex64, sizes: &[EnsembleSize]) -> Result<Vec<ContractionRow>> {
    if !(zeta.re.is_finite() && zeta.im.is_finite()) {
        return Err(invalid("zeta must be finite"));
    }
    if sizes.windows(2).any(|w| w[1].get() <= w[0].get()) {
        return Err(invalid("ensemble sizes must be strictly increasing"));
    }
    let r = zeta.norm();
    let limit = (-r * r / 2.0).exp();
    Ok(sizes
        .iter()
        .map(|&size| {
            let point = fan_error(r, size);
            let scaled = r / (2.0 * size.as_f64()).sqrt();
            let overlap = overlap_probability(StereoLabel::ORIGIN, StereoLabel::new(zeta / (2.0 * size.as_f64()).sqrt()).expect("finite"), size);
            ContractionRow {
                n_spins: size,
                phi_f: point.phi_f,
                abs_err_phi: (point.phi_e * r * r).abs(),
                overlap,
                abs_err_overlap: (overlap - limit).abs(),
                prefactor: if scaled > 0.0 { scaled.atan() / scaled } else { 1.0 },
            }
        })
        .collect())
}

/// `N = start, 2·start, …` up to and including `end` when it lands on the grid.
pub fn doubling_sizes(start: u64, end: u64) -> Result<Vec<EnsembleSize>> {
    if start == 0 || end < start {
        return Err(invalid(format!("bad ensemble range {start}..={end}")));
    }
    let mut out = Vec::new();
    let mut n = start;
    while n <= end {
        out.push(EnsembleSize::new(n)?);
        n = n.checked_mul(2).ok_or_else(|| invalid("ensemble size overflow"))?;
    }
    Ok(out)
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 2 {
        return Err(invalid("slope fit needs two points"));
    }
    if points.iter().any(|&(x, y)| !(x > 0.0 && y > 0.0)) {
        return Err(invalid("log-log fit needs positive data"));
    }
    let k = points.len() as f64;
    let (lx, ly): (Vec<f64>, Vec<f64>) = points.iter().map(|&(x, y)| (x.ln(), y.ln())).unzip();
    let mx = lx.iter().sum::<f64>() / k;
    let my = ly.iter().sum::<f64>() / k;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(invalid("slope fit needs distinct abscissae"));
    }
    Ok(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(k: u64) -> EnsembleSize {
        EnsembleSize::new(k).unwrap()
    }

    #[test]
    fn large_loop_endpoint() {
        let p = fan_error(40.0, n(10_000_000));
        assert!((p.phi_e - 1.59977e-4).abs() < 1e-8, "{}", p.phi_e);
        assert!((p.infidelity - 4.0946e-5).abs() < 1e-8, "{}", p.infidelity);
        assert!((p.infid_series - 4.096e-5).abs() < 1e-15);
    }

    #[test]
    fn deficit_matches_direct_difference_when_well_conditioned() {
        for (z, k) in [(1.0, 3u64), (5.0, 40), (10.0, 100), (3.0, 1)] {
            let p = fan_error(z, n(k));
            let direct = (z * z - p.phi_f) / (z * z);
            assert!((p.phi_e - direct).abs() < 1e-12 * direct.abs().max(1.0), "z={z} N={k}");
        }
    }

    #[test]
    fn deficit_series_and_direct_branches_agree() {
        // y straddles the series cut-off
        for u in [4.9e-4, 5.0e-4, 5.1e-4] {
            let den = 1.0 + 2.0 * u - u * u;
            let y: f64 = 2.0 * u / den;
            let series = phase_deficit(u, 1.0);
            let head = 2.0 * u * u * (2.0 - u) / den;
            let direct = head + (y - y.atan());
            assert!((series - direct).abs() < 1e-12 * direct);
        }
    }

    #[test]
    fn errors_shrink_with_ensemble_size() {
        let mut last = fan_error(10.0, n(10_000));
        let mut k = 20_000u64;
        while k <= 10_000_000_000 {
            let p = fan_error(10.0, n(k));
            assert!(p.phi_e < last.phi_e && p.infidelity < last.infidelity);
            last = p;
            k *= 2;
        }
        assert!(last.phi_e < 5e-8);
    }

    #[test]
    fn closed_form_and_exact_infidelity_agree_at_leading_order() {
        let p = fan_error(5.0, n(1_000_000));
        assert!((p.infidelity - p.infidelity_exact).abs() < 1e-12 * p.infidelity);
        assert!((p.infidelity / p.infid_series - 1.0).abs() < 1e-4);
    }

    #[test]
    fn contraction_limits() {
        let sizes = doubling_sizes(1000, 1_024_000).unwrap();
        assert_eq!(sizes.len(), 11);
        let rows = contraction_probe(Complex64::new(2.0, 0.0), &sizes).unwrap();
        let slope = loglog_slope(&rows.iter().map(|r| (r.n_spins.as_f64(), r.abs_err_phi)).collect::<Vec<_>>()).unwrap();
        assert!((slope + 1.0).abs() < 0.05, "{slope}");
        assert!(rows.windows(2).all(|w| w[0].prefactor < w[1].prefactor && w[1].prefactor < 1.0));
        let rows = contraction_probe(Complex64::new(1.0, 1.0), &[n(1_000_000)]).unwrap();
        assert!(rows[0].abs_err_overlap / (-1.0f64).exp() < 1e-6);
        assert!(contraction_probe(Complex64::new(1.0, 0.0), &[n(10), n(5)]).is_err());
    }

    #[test]
    fn slope_of_exact_power_law() {
        let pts: Vec<(f64, f64)> = (1..6).map(|k| (k as f64, 3.0 * (k as f64).powf(-1.5))).collect();
        assert!((loglog_slope(&pts).unwrap() + 1.5).abs() < 1e-12);
        assert!(loglog_slope(&pts[..1]).is_err());
    }
}
