//! Experiment drivers: convergence studies, thin-film stability and energy,
//! domain-wall motion, unit conversion and output.

pub mod convergence;
pub mod domainwall;
pub mod efficiency;
pub mod manufactured;
pub mod sample;
pub mod thinfilm;
pub mod units;

pub use convergence::{
    convergence_coupled, convergence_space, convergence_time, fit_slope, run_case, ConvergenceRow, OrderReport, Startup,
    StudyOptions,
};
pub use manufactured::ManufacturedCase;
pub use sample::{angle_snapshot, EnergyRecorder, EnergySample, Sample, Simulation};
pub use units::{convert_units, Dimensionless, PhysicalUnits};
pub use domainwall::{linear_fit, neel_wall, wall_position, LinearFit, WallExperiment, WallSweep, WallTrack, WallTracker};
pub use thinfilm::{EnergyWatch, ENERGY_GROWTH_TOLERANCE, OSCILLATION_WINDOW, decay_ordering, energy_curves, thinfilm_run, thinfilm_stability, EnergyCurve, StabilityRecord};
pub use efficiency::{efficiency_point, efficiency_space, efficiency_time, pareto_dominates, EfficiencyPoint};
