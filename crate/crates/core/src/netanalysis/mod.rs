//! Degree-distribution analysis, the growth-based preferential attachment
//! test, and synthetic network generators.

mod generate;
mod growth;
mod profile;

pub use generate::{
    generate_ba, generate_directed_scale_free, generate_er, generate_trade, grow, Attachment, GrowthHistory,
    GrowthOptions,
};
pub use growth::{pa_exponent, pa_test, PaTest};
pub use profile::{
    degree_profile, degree_profile_from, DegreeProfile, Direction, PowerLawFit, DEFAULT_K_MIN,
};

/// Ordinary least squares `y ≈ slope·x + intercept`. `None` when the `x`
/// values do not vary.
pub(crate) fn fit_line(xs: &[f64], ys: &[f64]) -> Option<(f64, f64)> {
    let n = xs.len() as f64;
    if xs.len() < 2 {
        return None;
    }
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx <= f64::EPSILON * n {
        return None;
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    Some((slope, my - slope * mx))
}
