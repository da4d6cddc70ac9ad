//! Parallel sampling over per-index substreams; output is identical to the
//! sequential core routine for the same seed.

use phaseforge_core::phtype::{sample_one, summarize};
use phaseforge_core::{Error, PhaseType, SampleSet};
use rayon::prelude::*;

pub fn par_sample(d: &PhaseType, count: usize, seed: u64) -> Result<SampleSet, Error> {
    if count == 0 {
        return Err(Error::InvalidCount);
    }
    let values = (0..count as u64)
        .into_par_iter()
        .map(|i| sample_one(d, seed, i))
        .collect();
    Ok(summarize(values, seed))
}
