//! The built-in panel priors used by the bundled datasets and threshold
//! tables: four qubit and four qutrit distributions, labelled (a)-(d).

use crate::dist::LevelDistribution;

pub const PANEL_LABELS: [char; 4] = ['a', 'b', 'c', 'd'];

/// Qubit panels (a)-(d): [1/2, 1/2], [0.6, 0.4], [0.2, 0.8], [0.3, 0.7].
pub fn qubit_panels() -> [LevelDistribution; 4] {
    [
        LevelDistribution::new(vec![0.5, 0.5]).unwrap(),
        LevelDistribution::new(vec![0.6, 0.4]).unwrap(),
        LevelDistribution::new(vec![0.2, 0.8]).unwrap(),
        LevelDistribution::new(vec![0.3, 0.7]).unwrap(),
    ]
}

/// Qutrit panels (a)-(d): uniform, [0.2, 0.4, 0.4], [0.5, 0.3, 0.2],
/// [0.2, 0.2, 0.6].
pub fn qutrit_panels() -> [LevelDistribution; 4] {
    [
        LevelDistribution::uniform(3).unwrap(),
        LevelDistribution::new(vec![0.2, 0.4, 0.4]).unwrap(),
        LevelDistribution::new(vec![0.5, 0.3, 0.2]).unwrap(),
        LevelDistribution::new(vec![0.2, 0.2, 0.6]).unwrap(),
    ]
}

/// All eight panel priors, qubit first.
pub fn all_panels() -> Vec<LevelDistribution> {
    qubit_panels().into_iter().chain(qutrit_panels()).collect()
}
