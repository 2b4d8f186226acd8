//! Real-valued time envelopes for Rabi frequencies and detunings (rad/us).

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub enum Envelope {
    Const(f64),
    /// amp * [exp(-(t - t0 - T/2)^2 / (2 s^2)) - exp(-T^2 / (8 s^2))] on [t0, t0 + T]
    ShiftedGaussian {
        amp: f64,
        t0: f64,
        duration: f64,
        sigma: f64,
    },
    /// amp * exp(-(t - center)^2 / (2 s^2))
    Gaussian {
        amp: f64,
        center: f64,
        sigma: f64,
    },
    /// amp * cos(omega t + phase)
    Cosine {
        amp: f64,
        omega: f64,
        phase: f64,
    },
    /// straight line from `from` at t0 to `to` at t1, clamped outside
    Linear {
        from: f64,
        to: f64,
        t0: f64,
        t1: f64,
    },
    /// from + (to - from) (1 - cos(pi s)) / 2 with s = (t - t0)/(t1 - t0), clamped
    CosineRamp {
        from: f64,
        to: f64,
        t0: f64,
        t1: f64,
    },
    Custom(RealFn),
}

impl fmt::Debug for Envelope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Envelope::Const(v) => write!(f, "Const({v})"),
            Envelope::ShiftedGaussian {
                amp,
                t0,
                duration,
                sigma,
            } => {
                write!(
                    f,
                    "ShiftedGaussian(amp={amp}, t0={t0}, T={duration}, sigma={sigma})"
                )
            }
            Envelope::Gaussian { amp, center, sigma } => {
                write!(f, "Gaussian(amp={amp}, center={center}, sigma={sigma})")
            }
            Envelope::Cosine { amp, omega, phase } => {
                write!(f, "Cosine(amp={amp}, omega={omega}, phase={phase})")
            }
            Envelope::Linear { from, to, t0, t1 } => {
                write!(f, "Linear({from} -> {to} on [{t0}, {t1}])")
            }
            Envelope::CosineRamp { from, to, t0, t1 } => {
                write!(f, "CosineRamp({from} -> {to} on [{t0}, {t1}])")
            }
            Envelope::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

fn ramp_s(t: f64, t0: f64, t1: f64) -> f64 {
    if t1 <= t0 {
        return if t < t0 { 0.0 } else { 1.0 };
    }
    ((t - t0) / (t1 - t0)).clamp(0.0, 1.0)
}

impl Envelope {
    pub fn zero() -> Self {
        Envelope::Const(0.0)
    }

    pub fn at(&self, t: f64) -> f64 {
        match self {
            Envelope::Const(v) => *v,
            Envelope::ShiftedGaussian {
                amp,
                t0,
                duration,
                sigma,
            } => {
                let x = t - t0 - 0.5 * duration;
                amp * ((-x * x / (2.0 * sigma * sigma)).exp()
                    - (-duration * duration / (8.0 * sigma * sigma)).exp())
            }
            Envelope::Gaussian { amp, center, sigma } => {
                let x = t - center;
                amp * (-x * x / (2.0 * sigma * sigma)).exp()
            }
            Envelope::Cosine { amp, omega, phase } => amp * (omega * t + phase).cos(),
            Envelope::Linear { from, to, t0, t1 } => from + (to - from) * ramp_s(t, *t0, *t1),
            Envelope::CosineRamp { from, to, t0, t1 } => {
                let s = ramp_s(t, *t0, *t1);
                from + (to - from) * 0.5 * (1.0 - (PI * s).cos())
            }
            Envelope::Custom(f) => f(t),
        }
    }

    pub fn is_const(&self) -> bool {
        matches!(self, Envelope::Const(_))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Envelope::Const(v) if *v == 0.0)
    }

    /// Central-difference derivative.
    pub fn derivative(&self, t: f64) -> f64 {
        let h = 1e-6 * (1.0 + t.abs());
        (self.at(t + h) - self.at(t - h)) / (2.0 * h)
    }

    /// Composite Simpson integral over [a, b] with n (even) panels.
    pub fn area(&self, a: f64, b: f64, n: usize) -> f64 {
        let n = (n.max(2) + 1) & !1;
        let h = (b - a) / n as f64;
        let mut s = self.at(a) + self.at(b);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            s += w * self.at(a + i as f64 * h);
        }
        s * h / 3.0
    }

    pub fn scaled(&self, k: f64) -> Envelope {
        match self {
            Envelope::Const(v) => Envelope::Const(v * k),
            other => {
                let e = other.clone();
                Envelope::Custom(Arc::new(move |t| k * e.at(t)))
            }
        }
    }
}
