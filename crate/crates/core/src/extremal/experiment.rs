use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{csv_string, ExtremalError, Instance, REPORT_SCHEMA_VERSION};
use crate::config::{ConfigKind, Policy};
use crate::group::Elem;

/// Fraction of random sets containing a configuration, per density.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub schema_version: u32,
    pub group: String,
    pub subgroup: Vec<Elem>,
    pub kind: ConfigKind,
    pub policy: Policy,
    pub ground_size: usize,
    pub densities: Vec<f64>,
    pub trials: usize,
    /// Size of every sampled set, `⌊density·N⌋`.
    pub set_sizes: Vec<usize>,
    pub hits: Vec<usize>,
    pub hit_fraction: Vec<f64>,
    pub seed: u64,
}

impl ExperimentReport {
    /// One row per density.
    pub fn to_csv(&self) -> Result<String, ExtremalError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let err = |e: csv::Error| ExtremalError::InvariantViolation(e.to_string());
        w.write_record(["density", "set_size", "trials", "hits", "hit_fraction"])
            .map_err(err)?;
        for i in 0..self.densities.len() {
            w.write_record([
                self.densities[i].to_string(),
                self.set_sizes[i].to_string(),
                self.trials.to_string(),
                self.hits[i].to_string(),
                self.hit_fraction[i].to_string(),
            ])
            .map_err(err)?;
        }
        csv_string(w)
    }
}

/// Trial `t` at density index `i` draws from its own ChaCha stream, so the
/// report does not depend on how trials are scheduled.
fn trial(inst: &Instance<'_>, density: f64, seed: u64, stream: u64) -> Result<bool, ExtremalError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let set = inst.random_set(density, &mut rng)?;
    inst.contains_config(&set)
}

#[cfg(feature = "parallel")]
fn run_trials(
    inst: &Instance<'_>,
    density: f64,
    seed: u64,
    first_stream: u64,
    trials: usize,
) -> Result<usize, ExtremalError> {
    use rayon::prelude::*;
    let results: Result<Vec<bool>, ExtremalError> = (0..trials as u64)
        .into_par_iter()
        .map(|t| trial(inst, density, seed, first_stream + t))
        .collect();
    Ok(results?.into_iter().filter(|&hit| hit).count())
}

#[cfg(not(feature = "parallel"))]
fn run_trials(
    inst: &Instance<'_>,
    density: f64,
    seed: u64,
    first_stream: u64,
    trials: usize,
) -> Result<usize, ExtremalError> {
    let mut hits = 0;
    for t in 0..trials as u64 {
        hits += trial(inst, density, seed, first_stream + t)? as usize;
    }
    Ok(hits)
}

/// For each density, samples `trials` uniform subsets of exactly
/// `⌊density·N⌋` points and records how many contain a configuration.
pub fn density_experiment(
    inst: &Instance<'_>,
    densities: &[f64],
    trials: usize,
    seed: u64,
) -> Result<ExperimentReport, ExtremalError> {
    if trials == 0 {
        return Err(ExtremalError::InvalidParameter(
            "trials must be at least 1".into(),
        ));
    }
    if densities.is_empty() {
        return Err(ExtremalError::InvalidParameter("no densities given".into()));
    }
    if let Some(d) = densities.iter().find(|&&d| !(d > 0.0 && d <= 1.0)) {
        return Err(ExtremalError::InvalidParameter(format!(
            "density {d} is outside (0, 1]"
        )));
    }
    let ground_size = inst.ground_size()?;
    let mut hits = Vec::with_capacity(densities.len());
    for (i, &density) in densities.iter().enumerate() {
        hits.push(run_trials(
            inst,
            density,
            seed,
            (i * trials) as u64,
            trials,
        )?);
    }
    Ok(ExperimentReport {
        schema_version: REPORT_SCHEMA_VERSION,
        group: inst.group.name().to_string(),
        subgroup: inst.subgroup.elements().to_vec(),
        kind: inst.kind,
        policy: inst.policy,
        ground_size,
        densities: densities.to_vec(),
        trials,
        set_sizes: densities
            .iter()
            .map(|d| (d * ground_size as f64).floor() as usize)
            .collect(),
        hit_fraction: hits.iter().map(|&h| h as f64 / trials as f64).collect(),
        hits,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_named_group, Subgroup};

    #[test]
    fn boolean_cube_never_hits() {
        let g = make_named_group(&"elemab:2:3".parse().unwrap()).unwrap();
        let h = Subgroup::whole(&g);
        let r = density_experiment(
            &Instance::new(&g, &h, ConfigKind::Ap3),
            &[0.25, 0.5, 1.0],
            50,
            7,
        )
        .unwrap();
        assert_eq!(r.hit_fraction, vec![0.0, 0.0, 0.0]);
    }

    #[test]
    fn full_density_always_hits() {
        let g = make_named_group(&"cyclic:4".parse().unwrap()).unwrap();
        let h = Subgroup::whole(&g);
        let r = density_experiment(&Instance::new(&g, &h, ConfigKind::Elso), &[1.0], 5, 1).unwrap();
        assert_eq!(r.hit_fraction, vec![1.0]);
        assert_eq!(r.set_sizes, vec![16]);
        let csv = r.to_csv().unwrap();
        assert_eq!(csv.lines().count(), 2);
    }

    #[test]
    fn rejects_bad_densities() {
        let g = make_named_group(&"cyclic:4".parse().unwrap()).unwrap();
        let h = Subgroup::whole(&g);
        let inst = Instance::new(&g, &h, ConfigKind::Elso);
        assert!(density_experiment(&inst, &[0.0], 5, 1).is_err());
        assert!(density_experiment(&inst, &[0.5], 0, 1).is_err());
    }
}
