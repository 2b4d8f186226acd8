//! Protocol catalog: names, anchors, parameter schemas and evaluators.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use serde::Serialize;

use super::config::NoiseConfig;
use crate::error::{Error, Result};
use crate::ham::Envelope;
use crate::interact::mhz_to_rad_us;
use crate::noise::{apply_doppler, blockade_error_analytic, mean_se, ThermalSpec};
use crate::protocols::{self as p, simulate, GateResult, SimOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Real,
    Int,
    Bool,
    Text,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Num(f64),
    Bool(bool),
    Text(String),
}

impl Value {
    pub fn render(&self) -> String {
        match self {
            Value::Num(x) => super::output::fmt9(*x),
            Value::Bool(b) => b.to_string(),
            Value::Text(s) => s.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    pub kind: Kind,
    /// "MHz" marks ordinary frequencies converted to rad/us once at ingestion
    pub unit: &'static str,
    pub default: Value,
    pub help: &'static str,
}

const fn real(
    name: &'static str,
    unit: &'static str,
    default: f64,
    help: &'static str,
) -> (&'static str, Kind, &'static str, f64, &'static str) {
    (name, Kind::Real, unit, default, help)
}

type Raw = (&'static str, Kind, &'static str, f64, &'static str);

fn specs(raw: &[Raw]) -> Vec<ParamSpec> {
    raw.iter()
        .map(|&(name, kind, unit, d, help)| ParamSpec {
            name,
            kind,
            unit,
            default: match kind {
                Kind::Bool => Value::Bool(d != 0.0),
                _ => Value::Num(d),
            },
            help,
        })
        .collect()
}

pub const TEMPERATURE: &str = "temperature_uk";

/// Parameter values as written in a config (MHz etc.).
pub type Params = BTreeMap<String, Value>;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Stat {
    pub mean: f64,
    pub se: f64,
}

impl Stat {
    pub fn exact(x: f64) -> Self {
        Stat { mean: x, se: 0.0 }
    }
}

pub type Metrics = Vec<(&'static str, Stat)>;

type Eval = fn(&Getter, &NoiseConfig) -> Result<Metrics>;

#[derive(Clone, Serialize)]
pub struct ProtocolInfo {
    pub name: &'static str,
    /// topical anchor of the construction this entry implements
    pub anchor: &'static str,
    pub summary: &'static str,
    pub params: Vec<ParamSpec>,
    pub metrics: Vec<&'static str>,
    /// has a `temperature_uk` parameter driving seeded Doppler sampling
    pub supports_doppler: bool,
    #[serde(skip)]
    eval: Eval,
}

impl std::fmt::Debug for ProtocolInfo {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProtocolInfo")
            .field("name", &self.name)
            .field("anchor", &self.anchor)
            .finish()
    }
}

impl ProtocolInfo {
    pub fn param(&self, name: &str) -> Option<&ParamSpec> {
        self.params.iter().find(|p| p.name == name)
    }

    /// Evaluates one point. `params` holds values as written in the config (MHz etc.).
    pub fn evaluate(&self, params: &Params, noise: &NoiseConfig) -> Result<Metrics> {
        let g = Getter {
            info: self,
            values: params,
        };
        (self.eval)(&g, noise)
    }
}

/// Typed access with defaults and the single MHz -> rad/us conversion.
pub struct Getter<'a> {
    info: &'a ProtocolInfo,
    values: &'a Params,
}

impl Getter<'_> {
    fn raw(&self, name: &str) -> Result<&Value> {
        let spec = self
            .info
            .param(name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown parameter {name}")))?;
        Ok(self.values.get(name).unwrap_or(&spec.default))
    }

    pub fn num(&self, name: &str) -> Result<f64> {
        let spec = self
            .info
            .param(name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown parameter {name}")))?;
        match self.raw(name)? {
            Value::Num(x) if spec.unit == "MHz" => Ok(mhz_to_rad_us(*x)),
            Value::Num(x) => Ok(*x),
            other => Err(Error::InvalidArgument(format!(
                "{name} must be numeric, got {other:?}"
            ))),
        }
    }

    pub fn int(&self, name: &str) -> Result<i64> {
        let x = self.num(name)?;
        if x.fract() != 0.0 {
            return Err(Error::InvalidArgument(format!(
                "{name} must be an integer, got {x}"
            )));
        }
        Ok(x as i64)
    }

    pub fn flag(&self, name: &str) -> Result<bool> {
        match self.raw(name)? {
            Value::Bool(b) => Ok(*b),
            other => Err(Error::InvalidArgument(format!(
                "{name} must be a boolean, got {other:?}"
            ))),
        }
    }

    pub fn text(&self, name: &str) -> Result<String> {
        match self.raw(name)? {
            Value::Text(s) => Ok(s.clone()),
            other => Err(Error::InvalidArgument(format!(
                "{name} must be a string, got {other:?}"
            ))),
        }
    }
}

fn gate_metrics(r: &GateResult) -> Metrics {
    vec![
        ("fidelity", Stat::exact(r.fidelity())),
        ("cphase", Stat::exact(r.conditional_phase())),
        (
            "leakage",
            Stat::exact(r.leakage.iter().sum::<f64>() / r.leakage.len().max(1) as f64),
        ),
        ("decay_error", Stat::exact(r.budget.decay)),
    ]
}

const GATE_METRICS: [&str; 4] = ["fidelity", "cphase", "leakage", "decay_error"];

fn opts(noise: &NoiseConfig) -> SimOptions {
    if noise.decay {
        SimOptions::default().with_decay()
    } else {
        SimOptions::default()
    }
}

fn tau(g: &Getter, noise: &NoiseConfig) -> Result<Option<f64>> {
    Ok(if noise.decay {
        Some(g.num("tau_us")?)
    } else {
        None
    })
}

fn eval_blockade(g: &Getter, noise: &NoiseConfig) -> Result<Metrics> {
    let om = g.num("omega_mhz")?;
    let v = g.num("v_over_omega")? * om;
    let r = simulate(&p::blockade_cz(om, v, g.num("delta_mhz")?)?, &opts(noise))?;
    let mut m = gate_metrics(&r);
    m.push(("rr_leak", Stat::exact(p::blockade_leak(om, v)?)));
    m.push((
        "rr_leak_analytic",
        Stat::exact(blockade_error_analytic(om, v)),
    ));
    Ok(m)
}

fn eval_detuned(g: &Getter, noise: &NoiseConfig) -> Result<Metrics> {
    let k = g.int("k")?;
    let sol = p::detuned_phase_solve(g.num("theta")?, if k < 0 { None } else { Some(k as i32) })?;
    let om = g.num("omega_mhz")?;
    let s = p::detuned_phase_schedule(
        &sol,
        om,
        g.num("v_over_omega")? * om,
        g.flag("blockade_correction")?,
    )?;
    let mut m = gate_metrics(&simulate(&s, &opts(noise))?);
    m.push(("delta_over_omega", Stat::exact(sol.delta_over_omega)));
    m.push(("xi", Stat::exact(sol.xi)));
    m.push(("t_omega", Stat::exact(sol.t_omega)));
    Ok(m)
}

fn eval_tsd2(g: &Getter, noise: &NoiseConfig) -> Result<Metrics> {
    let om = g.num("omega_t_mhz")?;
    let k = g.int("k")?;
    if k < 1 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let alpha = p::tsd::admissible_alpha(k as u32);
    let s = p::tsd_cnot_two_pulse(om, alpha, g.num("v_over_omega")? * om, tau(g, noise)?)?;
    let mut m = gate_metrics(&simulate(&s, &opts(noise))?);
    m.push(("alpha", Stat::exact(alpha)));
    Ok(m)
}

fn eval_tsd1(g: &Getter, noise: &NoiseConfig) -> Result<Metrics> {
    let om = g.num("omega_t_mhz")?;
    let k1 = g.int("k1")?;
    if k1 < 1 {
        return Err(Error::InvalidArgument("k1 must be at least 1".into()));
    }
    let ratio = g.num("ratio")?;
    let s = p::tsd_cnot_one_shot(
        om,
        ratio,
        k1 as u32,
        g.num("v_over_omega")? * om,
        tau(g, noise)?,
    )?;
    let r = simulate(&s, &opts(noise))?;
    let mut m = gate_metrics(&r);
    m.push(("pop_error_10", Stat::exact(1.0 - r.map[(3, 2)].norm_sqr())));
    let (k2, k3) = p::tsd::implied_k(ratio, k1 as u32);
    m.push(("k2", Stat::exact(k2)));
    m.push(("k3", Stat::exact(k3)));
    Ok(m)
}

fn eval_search(g: &Getter, noise: &NoiseConfig) -> Result<Metrics> {
    let k1_max = g.int("k1_max")?;
    if k1_max < 1 {
        return Err(Error::InvalidArgument("k1_max must be at least 1".into()));
    }
    let om = g.num("omega_t_mhz")?;
    let cfg = p::TsdSearch {
        omega_t: om,
        v: g.num("v_over_omega")? * om,
        tau: tau(g, noise)?,
        grid: g.int("grid")?.max(3) as usize,
    };
    let c = p::tsd_condition_search(
        k1_max as u32,
        (g.num("ratio_lo")?, g.num("ratio_hi")?),
        &cfg,
    )?;
    Ok(vec![
        ("k1", Stat::exact(c.k1 as f64)),
        ("ratio", Stat::exact(c.ratio)),
        ("k2", Stat::exact(c.k2)),
        ("k3", Stat::exact(c.k3)),
        ("map_error", Stat::exact(c.map_error)),
        ("total_error", Stat::exact(c.total_error)),
    ])
}

fn eval_dark(g: &Getter, noise: &NoiseConfig) -> Result<Metrics> {
    let sigma = g.num("sigma_us")?;
    let mut d = p::DarkStateParams::from_physical(
        g.num("omega_m_mhz")?,
        g.num("t_t_us")?,
        if sigma > 0.0 { Some(sigma) } else { None },
        g.num("c3_ghz_um3")?,
        g.num("l_um")?,
    )?;
    d.omega_c = g.num("omega_c_mhz")?;
    d.k_eff = TAU / g.num("wavelength_um")?;
    let s = p::dark_state_gate(&d)?;
    let base = opts(noise);
    let (phase, pop) = p::dark_state_return(&d, &base)?;
    let t = g.num(TEMPERATURE)?;
    if t < 0.0 {
        return Err(Error::InvalidArgument("temperature_uk must be >= 0".into()));
    }
    let mut m = match (t > 0.0).then_some(t) {
        Some(t) => {
            let spec = ThermalSpec {
                temperature: t,
                mass: p::DarkStateParams::CESIUM_AMU,
                k_eff: d.k_eff,
            };
            let st = apply_doppler(
                &s,
                &spec,
                &[1],
                noise.samples,
                noise.seed.unwrap_or(0),
                &base,
            )?;
            let err: Vec<f64> = st.results.iter().map(|r| 1.0 - r.fidelity()).collect();
            let (e, se) = mean_se(&err);
            vec![
                (
                    "fidelity",
                    Stat {
                        mean: st.fidelity.0,
                        se: st.fidelity.1,
                    },
                ),
                ("error", Stat { mean: e, se }),
            ]
        }
        None => {
            let r = simulate(&s, &base)?;
            vec![
                ("fidelity", Stat::exact(r.fidelity())),
                ("error", Stat::exact(1.0 - r.fidelity())),
            ]
        }
    };
    m.push(("return_phase", Stat::exact(phase)));
    m.push(("return_pop_error", Stat::exact(pop)));
    m.push(("sigma_resolved_us", Stat::exact(d.sigma)));
    Ok(m)
}

fn eval_ghz(g: &Getter, noise: &NoiseConfig) -> Result<Metrics> {
    let om = g.num("omega_mhz")?;
    let n = g.int("n")?;
    if n < 2 {
        return Err(Error::InvalidArgument("n must be at least 2".into()));
    }
    let s = p::ghz_asymmetric(
        n as usize,
        om,
        g.num("v_ss_over_omega")? * om,
        g.num("v_sp_over_omega")? * om,
        g.num("v_pp_over_omega")? * om,
    )?;
    let r = simulate(&s, &opts(noise))?;
    Ok(vec![
        ("fidelity", Stat::exact(r.fidelity())),
        ("duration_us", Stat::exact(s.duration)),
    ])
}

fn eval_echo(g: &Getter, noise: &NoiseConfig) -> Result<Metrics> {
    let om = g.num("omega_mhz")?;
    let (v0, v0p) = (g.num("v0_over_omega")? * om, g.num("v0p_over_omega")? * om);
    let mw = g.num("microwave_mhz")?;
    let s = p::spin_echo_cz(om, v0, v0p, if mw > 0.0 { Some(mw) } else { None })?;
    let mut m = gate_metrics(&simulate(&s, &opts(noise))?);
    m.push((
        "echo_error",
        Stat::exact(p::spin_echo_identity_error(om, v0, v0p, None)?),
    ));
    Ok(m)
}

fn eval_antiblockade(g: &Getter, noise: &NoiseConfig) -> Result<Metrics> {
    let om = g.num("omega_mhz")?;
    let mode = match g.text("mode")?.as_str() {
        "detuning" => p::AntiblockadeMode::DetuningMatch,
        "modulation" => p::AntiblockadeMode::Modulation,
        "compensated" => p::AntiblockadeMode::ModulationCompensated,
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown antiblockade mode '{other}'"
            )))
        }
    };
    let s = p::antiblockade_cz(
        om,
        g.num("scale_over_omega")? * om,
        mode,
        g.num("v_factor")?,
    )?;
    let samples = if mode == p::AntiblockadeMode::DetuningMatch {
        4000
    } else {
        40000
    };
    let period = p::flop_period(&s, 1.25 * s.duration, samples)?;
    let r = simulate(&s, &opts(noise))?;
    Ok(vec![
        ("fidelity", Stat::exact(r.fidelity())),
        ("period_us", Stat::exact(period)),
        ("period_predicted_us", Stat::exact(s.duration)),
    ])
}

fn eval_wait(g: &Getter, noise: &NoiseConfig) -> Result<Metrics> {
    let om = g.num("omega_mhz")?;
    let s = p::wait_phase_gate(
        om,
        g.num("v_over_omega")? * om,
        g.num("phi")?,
        g.flag("compensate")?,
    )?;
    Ok(gate_metrics(&simulate(&s, &opts(noise))?))
}

fn eval_ensemble(g: &Getter, noise: &NoiseConfig) -> Result<Metrics> {
    let n = g.int("n")?;
    if n < 1 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let t = g.num("t_us")?;
    let o = Envelope::Gaussian {
        amp: g.num("omega0_mhz")?,
        center: t / 2.0,
        sigma: t / 6.0,
    };
    let sw = g.num("sweep_mhz")?;
    let d = Envelope::Linear {
        from: -sw,
        to: sw,
        t0: 0.0,
        t1: t,
    };
    let r = simulate(
        &p::ensemble_adiabatic_excitation(n as usize, &o, &d, t)?,
        &opts(noise),
    )?;
    let (a, b) = p::adiabaticity(&o, &d, t, 2000);
    Ok(vec![
        ("transfer", Stat::exact(r.fidelity())),
        ("adiabaticity_omega", Stat::exact(a)),
        ("adiabaticity_delta", Stat::exact(b)),
    ])
}

fn eval_forster(g: &Getter, _noise: &NoiseConfig) -> Result<Metrics> {
    let t = g.num("t_us")?;
    let d = p::sinh_sweep(g.num("span_mhz")?, t, g.num("shape")?);
    let f = p::forster_transfer(g.num("v_mhz")?, &d, t)?;
    Ok(vec![
        ("transfer", Stat::exact(f.bare)),
        ("dressed_transfer", Stat::exact(f.dressed)),
    ])
}

fn eval_berry(g: &Getter, _noise: &NoiseConfig) -> Result<Metrics> {
    let (th, amp, w) = (
        g.num("theta")?,
        g.num("theta_amp")?,
        g.int("winding")? as f64,
    );
    let path = move |s: f64| (th + amp * (TAU * s).sin(), TAU * w * s);
    let (a, b) = p::berry_phases(&path, 1e-10)?;
    Ok(vec![("phi1", Stat::exact(a)), ("phi2", Stat::exact(b))])
}

/// Every protocol builder, in a fixed order.
pub fn catalog() -> Vec<ProtocolInfo> {
    let tau = real(
        "tau_us",
        "us",
        330.0,
        "Rydberg lifetime, used when noise.decay is on",
    );
    vec![
        ProtocolInfo {
            name: "blockade_cz",
            anchor: "blockade-gate/pi-2pi-pi",
            summary: "control pi, target 2 pi, control pi under the blockade",
            params: specs(&[
                real("omega_mhz", "MHz", 1.0, "Rabi frequency"),
                real("v_over_omega", "", 10.0, "interaction over Rabi frequency"),
                real("delta_mhz", "MHz", 0.0, "detuning of 1 <-> r"),
            ]),
            metrics: [&GATE_METRICS[..], &["rr_leak", "rr_leak_analytic"]].concat(),
            supports_doppler: false,
            eval: eval_blockade,
        },
        ProtocolInfo {
            name: "detuned_phase_gate",
            anchor: "blockade-gate/detuned-two-pulse-phase",
            summary: "two simultaneous detuned pulses, the second with Rabi phase xi",
            params: specs(&[
                real("theta", "rad", PI, "target conditional phase"),
                ("k", Kind::Int, "", -1.0, "branch (-1 picks automatically)"),
                real("omega_mhz", "MHz", 1.0, "Rabi frequency"),
                real(
                    "v_over_omega",
                    "",
                    1000.0,
                    "interaction over Rabi frequency",
                ),
                (
                    "blockade_correction",
                    Kind::Bool,
                    "",
                    0.0,
                    "shift Delta by Omega^2/(2V)",
                ),
            ]),
            metrics: [&GATE_METRICS[..], &["delta_over_omega", "xi", "t_omega"]].concat(),
            supports_doppler: false,
            eval: eval_detuned,
        },
        ProtocolInfo {
            name: "tsd_cnot_two_pulse",
            anchor: "blockade-gate/tsd-cnot-two-step",
            summary: "two-step CNOT through target transitions 1 <-> r and 0 <-> r'",
            params: specs(&[
                real("omega_t_mhz", "MHz", 1.0, "target Rabi frequency"),
                (
                    "k",
                    Kind::Int,
                    "",
                    1.0,
                    "branch of alpha = sqrt(16 k^2 - 1)",
                ),
                real(
                    "v_over_omega",
                    "",
                    1e6,
                    "interaction over target Rabi frequency",
                ),
                tau,
            ]),
            metrics: [&GATE_METRICS[..], &["alpha"]].concat(),
            supports_doppler: false,
            eval: eval_tsd2,
        },
        ProtocolInfo {
            name: "tsd_cnot_one_shot",
            anchor: "blockade-gate/tsd-cnot-single-pulse",
            summary: "single simultaneous pulse CNOT (up to signs)",
            params: specs(&[
                real("omega_t_mhz", "MHz", 1.0, "target Rabi frequency"),
                real("ratio", "", 4.245739, "Omega_c / Omega_t"),
                (
                    "k1",
                    Kind::Int,
                    "",
                    3.0,
                    "duration branch, t = 2 sqrt(2) k1 pi / Omega_t",
                ),
                real(
                    "v_over_omega",
                    "",
                    1e9,
                    "interaction over target Rabi frequency",
                ),
                tau,
            ]),
            metrics: [&GATE_METRICS[..], &["pop_error_10", "k2", "k3"]].concat(),
            supports_doppler: false,
            eval: eval_tsd1,
        },
        ProtocolInfo {
            name: "tsd_condition_search",
            anchor: "blockade-gate/tsd-cnot-single-pulse",
            summary: "best (k1, ratio) for the single-pulse CNOT",
            params: specs(&[
                ("k1_max", Kind::Int, "", 9.0, "largest branch searched"),
                real("ratio_lo", "", 0.5, "lower end of the ratio bracket"),
                real("ratio_hi", "", 10.0, "upper end of the ratio bracket"),
                (
                    "grid",
                    Kind::Int,
                    "",
                    4000.0,
                    "grid points before refinement",
                ),
                real("omega_t_mhz", "MHz", 1.0, "target Rabi frequency"),
                real(
                    "v_over_omega",
                    "",
                    1e9,
                    "interaction over target Rabi frequency",
                ),
                tau,
            ]),
            metrics: vec!["k1", "ratio", "k2", "k3", "map_error", "total_error"],
            supports_doppler: false,
            eval: eval_search,
        },
        ProtocolInfo {
            name: "dark_state_gate",
            anchor: "forster-gate/dark-state",
            summary: "control pi, adiabatic target pulse into the Forster dark state, control pi",
            params: specs(&[
                real("omega_m_mhz", "MHz", 7.643, "peak target Rabi frequency"),
                real("t_t_us", "us", 0.29, "target pulse duration"),
                real(
                    "sigma_us",
                    "us",
                    0.0,
                    "Gaussian width (0 picks the 2 pi area width)",
                ),
                real("c3_ghz_um3", "GHz um^3", -33.0, "Forster C3 coefficient"),
                real("l_um", "um", 10.0, "interatomic distance"),
                real(
                    "omega_c_mhz",
                    "MHz",
                    50.0,
                    "control pi-pulse Rabi frequency",
                ),
                real("wavelength_um", "um", 0.319, "target excitation wavelength"),
                real(
                    TEMPERATURE,
                    "uK",
                    0.0,
                    "atom temperature; above 0 samples Doppler shifts (needs seed)",
                ),
            ]),
            metrics: vec![
                "fidelity",
                "error",
                "return_phase",
                "return_pop_error",
                "sigma_resolved_us",
            ],
            supports_doppler: true,
            eval: eval_dark,
        },
        ProtocolInfo {
            name: "ghz_asymmetric",
            anchor: "entanglement/ghz-asymmetric-blockade",
            summary: "three-step GHZ preparation with levels {0, 1, s, p}",
            params: specs(&[
                ("n", Kind::Int, "", 2.0, "number of atoms"),
                real("omega_mhz", "MHz", 1.0, "Rabi frequency"),
                real("v_ss_over_omega", "", 50.0, "s-s interaction over Omega"),
                real("v_sp_over_omega", "", 50.0, "s-p interaction over Omega"),
                real("v_pp_over_omega", "", 0.0, "p-p interaction over Omega"),
            ]),
            metrics: vec!["fidelity", "duration_us"],
            supports_doppler: false,
            eval: eval_ghz,
        },
        ProtocolInfo {
            name: "spin_echo_cz",
            anchor: "robustness/spin-echo",
            summary: "echoed blockade gate with a microwave flip r <-> r'",
            params: specs(&[
                real("omega_mhz", "MHz", 1.0, "Rabi frequency before the flip"),
                real("v0_over_omega", "", 20.0, "r-r interaction over Omega"),
                real("v0p_over_omega", "", -30.0, "r'-r' interaction over Omega"),
                real(
                    "microwave_mhz",
                    "MHz",
                    0.0,
                    "finite flip Rabi frequency (0: instantaneous)",
                ),
            ]),
            metrics: [&GATE_METRICS[..], &["echo_error"]].concat(),
            supports_doppler: false,
            eval: eval_echo,
        },
        ProtocolInfo {
            name: "antiblockade_cz",
            anchor: "antiblockade/effective-flop",
            summary: "|11> <-> |rr> flop by detuning match or amplitude modulation",
            params: vec![
                ParamSpec {
                    name: "omega_mhz",
                    kind: Kind::Real,
                    unit: "MHz",
                    default: Value::Num(1.0),
                    help: "Rabi amplitude",
                },
                ParamSpec {
                    name: "scale_over_omega",
                    kind: Kind::Real,
                    unit: "",
                    default: Value::Num(10.0),
                    help: "Delta/Omega (detuning) or omega/Omega_m (modulation)",
                },
                ParamSpec {
                    name: "mode",
                    kind: Kind::Text,
                    unit: "",
                    default: Value::Text("detuning".into()),
                    help: "detuning | modulation | compensated",
                },
                ParamSpec {
                    name: "v_factor",
                    kind: Kind::Real,
                    unit: "",
                    default: Value::Num(1.0),
                    help: "scales V off the match",
                },
            ],
            metrics: vec!["fidelity", "period_us", "period_predicted_us"],
            supports_doppler: false,
            eval: eval_antiblockade,
        },
        ProtocolInfo {
            name: "wait_phase_gate",
            anchor: "weak-interaction/wait-phase",
            summary: "simultaneous pi, free evolution under V, simultaneous pi",
            params: specs(&[
                real("omega_mhz", "MHz", 1.0, "Rabi frequency"),
                real("v_over_omega", "", 0.01, "interaction over Omega"),
                real("phi", "rad", PI, "conditional phase magnitude"),
                (
                    "compensate",
                    Kind::Bool,
                    "",
                    1.0,
                    "subtract the phase gathered during the pulses",
                ),
            ]),
            metrics: GATE_METRICS.to_vec(),
            supports_doppler: false,
            eval: eval_wait,
        },
        ProtocolInfo {
            name: "ensemble_adiabatic_excitation",
            anchor: "ensemble/adiabatic-collective",
            summary: "collective two-level sweep with sqrt(N) enhanced coupling",
            params: specs(&[
                ("n", Kind::Int, "", 1.0, "number of atoms"),
                real("omega0_mhz", "MHz", 4.0, "peak single-atom Rabi frequency"),
                real(
                    "sweep_mhz",
                    "MHz",
                    10.0,
                    "detuning swept from -sweep to +sweep",
                ),
                real("t_us", "us", 4.0, "duration"),
            ]),
            metrics: vec!["transfer", "adiabaticity_omega", "adiabaticity_delta"],
            supports_doppler: false,
            eval: eval_ensemble,
        },
        ProtocolInfo {
            name: "swept_forster_transfer",
            anchor: "forster-gate/adiabatic-sweep",
            summary: "defect sweep through the Forster resonance",
            params: specs(&[
                real("v_mhz", "MHz", 1.0, "Forster coupling"),
                real("span_mhz", "MHz", 20.0, "defect swept from -span to +span"),
                real("t_us", "us", 10.0, "duration"),
                real("shape", "", 3.0, "sinh sweep shape (0: linear)"),
            ]),
            metrics: vec!["transfer", "dressed_transfer"],
            supports_doppler: false,
            eval: eval_forster,
        },
        ProtocolInfo {
            name: "berry_phases",
            anchor: "geometric/dark-state-berry",
            summary:
                "geometric phases of a loop theta(s) = theta + amp sin(2 pi s), phi_r = 2 pi w s",
            params: specs(&[
                real("theta", "rad", PI / 4.0, "mixing angle offset"),
                real("theta_amp", "rad", 0.0, "mixing angle modulation"),
                ("winding", Kind::Int, "", 1.0, "loop winding number"),
            ]),
            metrics: vec!["phi1", "phi2"],
            supports_doppler: false,
            eval: eval_berry,
        },
    ]
}

pub fn find(name: &str) -> Option<ProtocolInfo> {
    catalog().into_iter().find(|p| p.name == name)
}
