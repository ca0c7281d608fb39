use std::fmt::Write as _;
use std::path::Path;

use djspin::dynamics::{
    axis_probabilities, bloch_trajectory, uniform_grid, Evolver, TwoLevelSystem,
};
use djspin::linalg::eig_hermitian;
use djspin::model::{block_decompose, DeviceLabel};
use djspin::resonance::{resonance_table, scan_dj};
use djspin::verify::{run_all, VerifyOptions};
use djspin::SpinQuantum;
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};

/// Seconds per unit of time when energies are in cm⁻¹ and ħ = 1:
/// `1 / (2π c)` with `c` in cm/s.
const SPEED_OF_LIGHT_CM_PER_S: f64 = 2.997_924_58e10;

pub fn picoseconds_per_unit() -> f64 {
    1e12 / (2.0 * std::f64::consts::PI * SPEED_OF_LIGHT_CM_PER_S)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum TimeUnit {
    /// 1/cm⁻¹ (ħ = 1)
    #[default]
    Natural,
    Ps,
}

impl TimeUnit {
    fn header(self) -> &'static str {
        match self {
            TimeUnit::Natural => "time",
            TimeUnit::Ps => "time_ps",
        }
    }

    fn display(self, t: f64) -> f64 {
        match self {
            TimeUnit::Natural => t,
            TimeUnit::Ps => t * picoseconds_per_unit(),
        }
    }
}

/// 17 significant digits, locale independent.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_output(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn spectrum(cfg: &RunConfig) -> CliResult<String> {
    let reg = cfg.space.registry(&cfg.params)?;
    let h = cfg.space.hamiltonian(&cfg.params)?;
    let blocks = block_decompose(&h, &reg, 1e-12)?;
    let mut text = String::new();
    for sector in &blocks.blocks {
        let values = eig_hermitian(&sector.block)?.values;
        writeln!(
            text,
            "# m={} size={}",
            sector.m_total.signed(),
            values.len()
        )
        .unwrap();
        for v in values {
            writeln!(text, "{}", num(v)).unwrap();
        }
    }
    Ok(text)
}

pub fn evolve(cfg: &RunConfig, unit: TimeUnit) -> CliResult<String> {
    let reg = cfg.space.registry(&cfg.params)?;
    let h = cfg.space.hamiltonian(&cfg.params)?;
    let rho0 = cfg.space.initial_state(&cfg.params, &cfg.initial)?;
    let times = uniform_grid(cfg.t_max, cfg.steps);
    let evolver = Evolver::new(&h)?;
    let frame = evolver.eigenframe(&rho0)?;

    let bloch = match cfg.bloch_pair {
        Some((north, south)) => {
            let poles = TwoLevelSystem {
                eps: 0.0,
                g: 0.0,
                pole_north: north,
                pole_south: south,
            };
            Some(bloch_trajectory(&h, &reg, &poles, &rho0, &times)?)
        }
        None => None,
    };

    let mut text = String::from(unit.header());
    for l in reg.labels() {
        write!(text, ",pop:{l}").unwrap();
    }
    if bloch.is_some() {
        text.push_str(",vx,vy,vz,weight,px,py,pz");
    }
    text.push('\n');
    for (row, &t) in times.iter().enumerate() {
        text.push_str(&num(unit.display(t)));
        for i in 0..reg.dim() {
            write!(text, ",{}", num(evolver.element_at(&frame, i, i, t).re)).unwrap();
        }
        if let Some(samples) = &bloch {
            let s = &samples[row];
            let (px, py, pz) = axis_probabilities(s);
            for x in [s.vx, s.vy, s.vz, s.in_subspace_weight, px, py, pz] {
                write!(text, ",{}", num(x)).unwrap();
            }
        }
        text.push('\n');
    }
    Ok(text)
}

#[derive(Clone, Debug)]
pub struct ScanGrid {
    pub d_min: f64,
    pub d_max: f64,
    pub d_steps: usize,
    pub jk_min: f64,
    pub jk_max: f64,
    pub jk_steps: usize,
}

fn axis(name: &str, lo: f64, hi: f64, steps: usize) -> CliResult<Vec<f64>> {
    if steps == 0 || !lo.is_finite() || !hi.is_finite() {
        return Err(CliError::Config(format!(
            "{name}: need finite bounds and at least one step"
        )));
    }
    if steps == 1 {
        return Ok(vec![lo]);
    }
    if hi < lo {
        return Err(CliError::Config(format!(
            "{name}: max {hi} is below min {lo}"
        )));
    }
    Ok((0..steps)
        .map(|k| lo + (hi - lo) * k as f64 / (steps - 1) as f64)
        .collect())
}

pub fn scan(
    cfg: &RunConfig,
    grid: &ScanGrid,
    pair: (DeviceLabel, DeviceLabel),
    jobs: usize,
) -> CliResult<String> {
    let d = axis("d", grid.d_min, grid.d_max, grid.d_steps)?;
    let jk = axis("j_k", grid.jk_min, grid.jk_max, grid.jk_steps)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Config(format!("jobs: {e}")))?;
    let result = pool.install(|| scan_dj(&cfg.params, &d, &jk, pair))?;
    let mut text = String::from("d,j_k,amplitude,frequency\n");
    for p in &result.points {
        writeln!(
            text,
            "{},{},{},{}",
            num(p.d),
            num(p.j_k),
            num(p.amplitude),
            num(p.frequency)
        )
        .unwrap();
    }
    Ok(text)
}

pub fn table1(s23: SpinQuantum, d: Option<f64>) -> CliResult<String> {
    let mut text = String::from("initial,target,j_r_over_d,p_r,omega_r_over_abs_d");
    if d.is_some() {
        text.push_str(",j_r,omega_r");
    }
    text.push('\n');
    for rec in resonance_table(s23)? {
        write!(
            text,
            "{},{},{},{},{}",
            rec.pair.1,
            rec.pair.0,
            rec.j_r_coefficient,
            num(rec.p_r),
            num(rec.omega_r_coefficient)
        )
        .unwrap();
        if let Some(d) = d {
            write!(text, ",{},{}", num(rec.j_r(d)), num(rec.omega_r(d))).unwrap();
        }
        text.push('\n');
    }
    Ok(text)
}

#[derive(Serialize)]
struct CheckJson {
    name: &'static str,
    passed: bool,
    detail: String,
}

#[derive(Serialize)]
struct VerifyJson {
    passed: bool,
    checks: Vec<CheckJson>,
}

/// Returns the report text and whether every check passed.
pub fn verify(json: bool, inject_sign_error: bool) -> (String, bool) {
    let checks = run_all(VerifyOptions {
        inject_delta_sign_error: inject_sign_error,
    });
    let passed = checks.iter().all(|c| c.passed);
    let text = if json {
        let report = VerifyJson {
            passed,
            checks: checks
                .into_iter()
                .map(|c| CheckJson {
                    name: c.name,
                    passed: c.passed,
                    detail: c.detail,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
    } else {
        let mut t = String::new();
        for c in &checks {
            writeln!(
                t,
                "{} {}: {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            )
            .unwrap();
        }
        t
    };
    (text, passed)
}
