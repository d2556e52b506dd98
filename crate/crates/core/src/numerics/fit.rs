use crate::error::{Error, Result};

/// Least-squares slope of `ln value` against `ln radius`.
pub fn decay_slope_fit(radii: &[f64], values: &[f64]) -> Result<f64> {
    if radii.len() != values.len() {
        return Err(Error::DegenerateFit(format!(
            "{} radii but {} values",
            radii.len(),
            values.len()
        )));
    }
    if radii.len() < 4 {
        return Err(Error::DegenerateFit(format!("{} points, need at least 4", radii.len())));
    }
    if let Some(v) = values.iter().find(|v| !(**v > 0.0 && v.is_finite())) {
        return Err(Error::DegenerateFit(format!("value {v} is not positive")));
    }
    if radii.iter().any(|r| !(*r > 0.0)) {
        return Err(Error::DegenerateFit("radii must be positive".into()));
    }
    let xs: Vec<f64> = radii.iter().map(|r| r.ln()).collect();
    let ys: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    let k = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / k, ys.iter().sum::<f64>() / k);
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateFit("all radii coincide".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    Ok(sxy / sxx)
}
