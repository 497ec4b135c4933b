//! Fixed inputs shared by the benchmarks.

use sepfid_core::random::{random_density, stream_rng};
use sepfid_core::{DensityMatrix, PureState, SubsystemSignature};

pub fn ghz(parties: usize) -> PureState {
    let dim = 1 << parties;
    let mut amps = vec![0.0; dim];
    amps[0] = 1.0;
    amps[dim - 1] = 1.0;
    PureState::from_real(&amps, &vec![2; parties]).expect("valid GHZ state")
}

pub fn w_state(parties: usize) -> PureState {
    let dim = 1 << parties;
    let mut amps = vec![0.0; dim];
    for k in 0..parties {
        amps[1 << k] = 1.0;
    }
    PureState::from_real(&amps, &vec![2; parties]).expect("valid W state")
}

pub fn random_two_qubit(rank: usize, seed: u64) -> DensityMatrix {
    let sig = SubsystemSignature::new(vec![2, 2]).expect("valid signature");
    random_density(&mut stream_rng(seed, 0), &sig, rank)
}
