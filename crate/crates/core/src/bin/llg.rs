//! Experiment driver: convergence studies, efficiency, thin-film stability
//! and energy, domain-wall motion.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use llg_core::harness::{
    convergence_space, convergence_time, decay_ordering, efficiency_space, efficiency_time, energy_curves,
    pareto_dominates, thinfilm_stability, EfficiencyPoint, ManufacturedCase, OrderReport, Sample, StudyOptions,
    WallExperiment,
};
use llg_core::integrators::Scheme;
use llg_core::io::{config::parse_list, fmt_sci, Config, CsvTable, LineChart, Series};
use llg_core::ops::StencilOrder;
use llg_core::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "llg", version, about = "Semi-implicit BDF integrators for the Landau-Lifshitz-Gilbert equation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Temporal convergence on the manufactured solution.
    ConvTime(Common),
    /// Spatial convergence on the manufactured solution.
    ConvSpace(Common),
    /// Wall time against error for varying step and grid.
    Efficiency(Common),
    /// Thin-film relaxation stability map and angle snapshots.
    Thinfilm(Common),
    /// Thin-film energy dissipation curves.
    Energy(Common),
    /// Field-driven Neel wall motion in a strip.
    Domainwall(Common),
}

#[derive(Args, Debug, Default, Clone)]
struct Common {
    /// Comma-separated schemes: bdf1, bdf2, bdf3.
    #[arg(long)]
    scheme: Option<String>,
    /// Comma-separated damping values.
    #[arg(long)]
    alpha: Option<String>,
    /// Comma-separated physical time steps in ps.
    #[arg(long = "dt-ps")]
    dt_ps: Option<String>,
    /// Cells NX,NY,NZ (convergence studies: NX cells per axis).
    #[arg(long)]
    grid: Option<String>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// key = value config file with one section per subcommand.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Stencil order, 2 or 4 (default: 4 for bdf3, 2 otherwise).
    #[arg(long)]
    stencil: Option<u8>,
    /// Comma-separated applied fields in mT (domainwall).
    #[arg(long = "field-mt")]
    field_mt: Option<String>,
    /// Simulated duration in ns (physical runs).
    #[arg(long = "t-ns")]
    t_ns: Option<f64>,
    /// Problem dimension of the manufactured case, 1 or 3.
    #[arg(long)]
    dim: Option<usize>,
}

/// Flag values layered over the config section.
struct Settings {
    section: &'static str,
    flags: Common,
    config: Config,
}

impl Settings {
    fn new(section: &'static str, flags: Common) -> Result<Self> {
        let config = match &flags.config {
            Some(p) => Config::load(p).map_err(|e| Error::Config(format!("cannot read config: {e}")))?,
            None => Config::default(),
        };
        Ok(Self { section, flags, config })
    }

    fn raw(&self, flag: &Option<String>, key: &str) -> Option<String> {
        flag.clone().or_else(|| self.config.get(self.section, key).map(str::to_string))
    }

    fn list<T: std::str::FromStr>(&self, flag: &Option<String>, key: &str, default: &[T]) -> Result<Vec<T>>
    where
        T: Clone,
        T::Err: std::fmt::Display,
    {
        match self.raw(flag, key) {
            Some(v) => {
                let out = parse_list(&v).map_err(|e| Error::Config(format!("{key}: {e}")))?;
                if out.is_empty() {
                    return Err(Error::Config(format!("{key}: empty list")));
                }
                Ok(out)
            }
            None => Ok(default.to_vec()),
        }
    }

    fn value<T: std::str::FromStr>(&self, key: &str, default: T) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        Ok(self.config.parse(self.section, key)?.unwrap_or(default))
    }

    fn schemes(&self) -> Result<Vec<Scheme>> {
        self.list(&self.flags.scheme, "scheme", &Scheme::ALL)
    }

    fn alphas(&self, default: &[f64]) -> Result<Vec<f64>> {
        self.list(&self.flags.alpha, "alpha", default)
    }

    fn dts(&self, default: &[f64]) -> Result<Vec<f64>> {
        self.list(&self.flags.dt_ps, "dt_ps", default)
    }

    fn grid(&self, default: [usize; 3]) -> Result<[usize; 3]> {
        let g: Vec<usize> = self.list(&self.flags.grid, "grid", &default)?;
        match g.as_slice() {
            [n] => Ok([*n, default[1], default[2]]),
            [x, y, z] => Ok([*x, *y, *z]),
            _ => Err(Error::Config(format!("grid needs 1 or 3 values, got {}", g.len()))),
        }
    }

    fn t_ns(&self, default: f64) -> Result<f64> {
        match self.flags.t_ns {
            Some(t) => Ok(t),
            None => self.value("t_ns", default),
        }
    }

    fn stencil(&self) -> Result<Option<StencilOrder>> {
        let v = match self.flags.stencil {
            Some(s) => Some(s),
            None => self.config.parse::<u8>(self.section, "stencil")?,
        };
        match v {
            None => Ok(None),
            Some(2) => Ok(Some(StencilOrder::Second)),
            Some(4) => Ok(Some(StencilOrder::Fourth)),
            Some(o) => Err(Error::Config(format!("stencil must be 2 or 4, got {o}"))),
        }
    }

    fn out(&self) -> Result<PathBuf> {
        let dir = match &self.flags.out {
            Some(p) => p.clone(),
            None => PathBuf::from(self.config.get(self.section, "out").unwrap_or("results")),
        };
        std::fs::create_dir_all(&dir).map_err(|source| Error::File { path: dir.display().to_string(), source })?;
        Ok(dir)
    }

    fn case(&self) -> Result<ManufacturedCase> {
        let dim = match self.flags.dim {
            Some(d) => d,
            None => self.value("dim", 1)?,
        };
        let alpha = *self.alphas(&[10.0])?.first().expect("non-empty");
        ManufacturedCase::new(dim, alpha, self.value("t_final", 0.1)?)
    }
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::File { path: path.display().to_string(), source })
}

fn conv_table(report: &OrderReport) -> Result<CsvTable> {
    let mut t = CsvTable::new(&["k", "h", "linf", "l2", "h1"]);
    for r in &report.rows {
        t.push_nums(&[r.k, r.h, r.norms.linf, r.norms.l2, r.norms.h1])?;
    }
    Ok(t)
}

fn conv_outputs(dir: &Path, stem: &str, abscissa: &str, reports: &[OrderReport], by_h: bool) -> Result<()> {
    let mut chart = LineChart::new(stem, abscissa, "max-norm error").log_log();
    for r in reports {
        conv_table(r)?.write(&dir.join(format!("{stem}_{}.csv", r.scheme)))?;
        let pts = r.rows.iter().map(|row| (if by_h { row.h } else { row.k }, row.norms.linf)).collect();
        chart = chart.with_series(Series::new(r.scheme.name(), pts));
        println!(
            "{}: order linf {:.3}  l2 {:.3}  h1 {:.3}{}",
            r.scheme,
            r.slopes[0],
            r.slopes[1],
            r.slopes[2],
            if r.monotone { "" } else { "  (non-monotone)" }
        );
    }
    write_text(&dir.join(format!("{stem}.svg")), &chart.render())
}

fn study_options(s: &Settings) -> Result<StudyOptions> {
    Ok(StudyOptions { stencil: s.stencil()?, ..StudyOptions::default() })
}

fn conv_time(s: Settings) -> Result<ExitCode> {
    let case = s.case()?;
    let cells = s.grid([if case.dim() == 1 { 10_000 } else { 16 }, 0, 0])?[0];
    let divisors: Vec<f64> = s.config.list(s.section, "divisors")?.unwrap_or_else(|| vec![8.0, 12.0, 16.0, 24.0, 32.0]);
    let ks: Vec<f64> = divisors.iter().map(|d| case.t_final / d).collect();
    let dir = s.out()?;
    let opts = study_options(&s)?;
    let reports = s.schemes()?.into_iter().map(|sc| convergence_time(sc, &case, &ks, cells, opts)).collect::<Result<Vec<_>>>()?;
    conv_outputs(&dir, "conv_time", "k", &reports, false)?;
    Ok(ExitCode::SUCCESS)
}

fn conv_space(s: Settings) -> Result<ExitCode> {
    let case = s.case()?;
    let ladder: Vec<usize> = s.list(&s.flags.grid, "grid", &[16, 32, 64, 128, 256])?;
    let k = s.value("k", if case.dim() == 1 { 1e-5 } else { 1e-4 })?;
    let dir = s.out()?;
    let opts = study_options(&s)?;
    let reports = s.schemes()?.into_iter().map(|sc| convergence_space(sc, &case, &ladder, k, opts)).collect::<Result<Vec<_>>>()?;
    conv_outputs(&dir, "conv_space", "h", &reports, true)?;
    Ok(ExitCode::SUCCESS)
}

fn efficiency_csv(points: &[EfficiencyPoint], path: &Path) -> Result<()> {
    let mut t = CsvTable::new(&["scheme", "k", "h", "error", "seconds"]);
    for p in points {
        t.push(vec![p.scheme.to_string(), fmt_sci(p.k), fmt_sci(1.0 / p.cells as f64), fmt_sci(p.error), fmt_sci(p.seconds)])?;
    }
    t.write(path)
}

fn efficiency(s: Settings) -> Result<ExitCode> {
    let case = s.case()?;
    let cells = s.grid([1000, 0, 0])?[0];
    let divisors: Vec<f64> = s.config.list(s.section, "divisors")?.unwrap_or_else(|| vec![2.0, 4.0, 8.0, 16.0, 32.0, 64.0]);
    let ks: Vec<f64> = divisors.iter().map(|d| case.t_final / d).collect();
    let ladder: Vec<usize> = s.config.list(s.section, "cells")?.unwrap_or_else(|| vec![16, 32, 64, 128]);
    let k_fixed = s.value("k", 1e-4)?;
    let repeats = s.value("repeats", 3usize)?;
    let opts = study_options(&s)?;
    let dir = s.out()?;
    let mut by_k = Vec::new();
    let mut by_h = Vec::new();
    for sc in s.schemes()? {
        by_k.push(efficiency_time(sc, &case, &ks, cells, repeats, opts)?);
        by_h.push(efficiency_space(sc, &case, &ladder, k_fixed, repeats, opts)?);
    }
    for (stem, sets) in [("efficiency_time", &by_k), ("efficiency_space", &by_h)] {
        let all: Vec<EfficiencyPoint> = sets.iter().flatten().copied().collect();
        efficiency_csv(&all, &dir.join(format!("{stem}.csv")))?;
        let mut chart = LineChart::new(stem, "max-norm error", "seconds").log_log();
        for set in sets.iter() {
            let name = set.first().map(|p| p.scheme.name()).unwrap_or("");
            chart = chart.with_series(Series::new(name, set.iter().map(|p| (p.error, p.seconds)).collect()));
        }
        write_text(&dir.join(format!("{stem}.svg")), &chart.render())?;
    }
    for a in &by_k {
        for b in &by_k {
            if let (Some(pa), Some(pb)) = (a.first(), b.first()) {
                if pa.scheme > pb.scheme {
                    println!("varying k: {} dominates {}: {}", pa.scheme, pb.scheme, pareto_dominates(a, b));
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn snapshot_name(scheme: Scheme, alpha: f64, dt: f64) -> String {
    format!("snapshot_{scheme}_a{alpha}_dt{dt}.csv")
}

fn thinfilm(s: Settings) -> Result<ExitCode> {
    let sample = Sample::thin_film().with_cells(s.grid([100, 100, 4])?);
    let schemes = s.schemes()?;
    let alphas = s.alphas(&[1.0, 5.0, 10.0, 40.0, 100.0])?;
    let dts = s.dts(&[1.0, 0.1])?;
    let t_ns = s.t_ns(2.0)?;
    if s.stencil()?.is_some() {
        return Err(Error::Config("thinfilm uses the scheme's default stencils".into()));
    }
    for &dt in &dts {
        Sample::steps_for(dt, t_ns)?;
    }
    let dir = s.out()?;
    let records = thinfilm_stability(&sample, &schemes, &alphas, &dts, t_ns)?;
    let mut t = CsvTable::new(&["scheme", "alpha", "dt_ps", "stable"]);
    for r in &records {
        t.push(vec![r.scheme.to_string(), fmt_sci(r.alpha), fmt_sci(r.dt_ps), u8::from(r.stable).to_string()])?;
        write_text(&dir.join(snapshot_name(r.scheme, r.alpha, r.dt_ps)), &CsvTable::render_grid(&r.snapshot))?;
        match r.blow_up_ns() {
            None => println!("{} alpha={} dt={} ps: stable", r.scheme, r.alpha, r.dt_ps),
            Some(t) => println!(
                "{} alpha={} dt={} ps: unstable at {:.4} ns ({})",
                r.scheme,
                r.alpha,
                r.dt_ps,
                t,
                r.reason.as_deref().unwrap_or("")
            ),
        }
    }
    t.write(&dir.join("stability.csv"))?;
    if records.len() == 1 && !records[0].stable {
        return Ok(ExitCode::from(3));
    }
    Ok(ExitCode::SUCCESS)
}

fn energy(s: Settings) -> Result<ExitCode> {
    let sample = Sample::thin_film().with_cells(s.grid([100, 100, 4])?);
    let schemes = s.schemes()?;
    let alphas = s.alphas(&[5.0, 8.0, 10.0, 12.0])?;
    let dts = s.dts(&[0.1])?;
    let [dt] = dts.as_slice() else {
        return Err(Error::Config("energy takes a single --dt-ps".into()));
    };
    let t_ns = s.t_ns(2.0)?;
    let stride = s.value("stride", 1usize)?;
    let dir = s.out()?;
    let curves = energy_curves(&sample, &schemes, &alphas, *dt, t_ns, stride)?;
    let mut chart = LineChart::new("energy", "time (ns)", "energy");
    for c in &curves {
        let mut t = CsvTable::new(&["step", "time_ns", "energy"]);
        for p in &c.samples {
            t.push(vec![p.step.to_string(), fmt_sci(p.time_ns), fmt_sci(p.energy)])?;
        }
        t.write(&dir.join(format!("energy_{}_a{}.csv", c.scheme, c.alpha)))?;
        chart = chart.with_series(Series::new(format!("{} a={}", c.scheme, c.alpha), c.samples.iter().map(|p| (p.time_ns, p.energy)).collect()));
        println!(
            "{} alpha={}: final energy {:.6e}, max relative increase {:.3e}{}",
            c.scheme,
            c.alpha,
            c.samples.last().map_or(f64::NAN, |p| p.energy),
            c.max_relative_increase(),
            if c.blown_up { " (blown up)" } else { "" }
        );
    }
    write_text(&dir.join("energy.svg"), &chart.render())?;
    let early = s.value("early_ns", (0.1 * t_ns).min(t_ns))?;
    for (scheme, ok) in decay_ordering(&curves, early) {
        println!("{scheme}: energy at {early} ns decreases with alpha: {ok}");
    }
    if curves.len() == 1 && curves[0].blown_up {
        return Ok(ExitCode::from(3));
    }
    Ok(ExitCode::SUCCESS)
}

fn domainwall(s: Settings) -> Result<ExitCode> {
    let schemes = s.schemes()?;
    let [scheme] = schemes.as_slice() else {
        return Err(Error::Config("domainwall takes a single --scheme".into()));
    };
    let mut exp = WallExperiment::standard(*scheme);
    exp.sample = exp.sample.with_cells(s.grid(exp.sample.cells)?);
    exp.stencil = s.stencil()?;
    let dts = s.dts(&[exp.dt_ps])?;
    let [dt] = dts.as_slice() else {
        return Err(Error::Config("domainwall takes a single --dt-ps".into()));
    };
    exp.dt_ps = *dt;
    exp.run_ns = s.t_ns(exp.run_ns)?;
    exp.relax_ns = s.value("relax_ns", exp.relax_ns)?;
    exp.stride = s.value("stride", exp.stride)?;
    let alphas = s.alphas(&[5.0, 6.0, 7.0, 8.0, 9.0, 10.0])?;
    let fields = s.list(&s.flags.field_mt, "field_mt", &[5.0, 6.0, 7.0, 8.0, 9.0, 10.0])?;
    let dir = s.out()?;
    let sweep = exp.sweep(&alphas, &fields)?;
    let mut v = CsvTable::new(&["alpha", "field_mt", "velocity_m_s", "r2", "truncated"]);
    for t in &sweep.tracks {
        let mut track = CsvTable::new(&["time_ns", "position_nm"]);
        for (time, pos) in t.times_ns.iter().zip(&t.positions_nm) {
            track.push_nums(&[*time, *pos])?;
        }
        track.write(&dir.join(format!("wall_a{}_h{}.csv", t.alpha, t.field_mt)))?;
        let (speed, r2) = t.fit.map_or((f64::NAN, f64::NAN), |f| (f.slope.abs(), f.r2));
        v.push(vec![fmt_sci(t.alpha), fmt_sci(t.field_mt), fmt_sci(speed), fmt_sci(r2), u8::from(t.truncated).to_string()])?;
        if t.truncated {
            eprintln!("warning: wall track alpha={} field={} mT truncated", t.alpha, t.field_mt);
        }
        println!("alpha={} field={} mT: v = {:.2} m/s (r2 {:.4})", t.alpha, t.field_mt, speed, r2);
    }
    v.write(&dir.join("velocities.csv"))?;
    let mut slopes = CsvTable::new(&["varied", "fixed", "slope", "r2", "log_slope"]);
    for (name, rows) in [("field_mt", &sweep.vs_field), ("alpha", &sweep.vs_alpha)] {
        for r in rows {
            slopes.push(vec![name.into(), fmt_sci(r.fixed), fmt_sci(r.linear.slope), fmt_sci(r.linear.r2), fmt_sci(r.normalized_slope)])?;
            println!("v vs {name} at {}: slope {:.4} r2 {:.4} log-slope {:.4}", r.fixed, r.linear.slope, r.linear.r2, r.normalized_slope);
        }
    }
    slopes.write(&dir.join("slopes.csv"))?;
    let mut chart = LineChart::new("wall position", "time (ns)", "position (nm)");
    for t in &sweep.tracks {
        let pts = t.times_ns.iter().copied().zip(t.positions_nm.iter().copied()).collect();
        chart = chart.with_series(Series::new(format!("a={} h={}", t.alpha, t.field_mt), pts));
    }
    write_text(&dir.join("wall.svg"), &chart.render())?;
    Ok(ExitCode::SUCCESS)
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::ConvTime(c) => conv_time(Settings::new("conv-time", c)?),
        Command::ConvSpace(c) => conv_space(Settings::new("conv-space", c)?),
        Command::Efficiency(c) => efficiency(Settings::new("efficiency", c)?),
        Command::Thinfilm(c) => thinfilm(Settings::new("thinfilm", c)?),
        Command::Energy(c) => energy(Settings::new("energy", c)?),
        Command::Domainwall(c) => domainwall(Settings::new("domainwall", c)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Config(_) => ExitCode::from(2),
                Error::BlowUp { .. } => ExitCode::from(3),
                _ => ExitCode::FAILURE,
            }
        }
    }
}
