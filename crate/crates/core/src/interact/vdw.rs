//! Second-order (van der Waals) effective interaction on a degenerate pair manifold.

use std::str::FromStr;

use super::dipole::{dipole_dipole_element, AtomState, ChannelSpec, Geometry, Level, PairState};
use crate::error::{Error, Result};
use crate::qcore::{c, CMat, CVec, OperatorMatrix};

/// Fine-structure channel (A, B) -> (a, b); projections are enumerated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Channel {
    pub bra: [Level; 2],
    pub ket: [Level; 2],
    pub reduced: [f64; 2],
    /// rad/us
    pub defect: f64,
}

/// -sum_k V_{ik} V_{jk}^* / delta_k over every intermediate projection pair.
pub fn vdw_matrix(
    pair_states: &[PairState],
    channels: &[Channel],
    geom: &Geometry,
) -> Result<OperatorMatrix> {
    let n = pair_states.len();
    for (idx, ch) in channels.iter().enumerate() {
        if ch.defect == 0.0 || !ch.defect.is_finite() {
            return Err(Error::ForsterDegenerate { index: idx });
        }
    }
    // intermediate states keyed by ket levels and projections
    let mut inter: Vec<([Level; 2], f64, f64, f64, CVec)> = Vec::new();
    for ch in channels {
        for (i, ps) in pair_states.iter().enumerate() {
            if !(ps.a.level.same(&ch.bra[0]) && ps.b.level.same(&ch.bra[1])) {
                continue;
            }
            for ma in ch.ket[0].projections() {
                for mb in ch.ket[1].projections() {
                    let ket = PairState::new(
                        AtomState {
                            level: ch.ket[0],
                            m: ma,
                        },
                        AtomState {
                            level: ch.ket[1],
                            m: mb,
                        },
                    );
                    let spec = ChannelSpec {
                        bra: *ps,
                        ket,
                        reduced: ch.reduced,
                        defect: ch.defect,
                    };
                    let v = dipole_dipole_element(&spec, geom)?;
                    let pos = inter.iter().position(|(lv, a, b, _, _)| {
                        lv[0].same(&ch.ket[0]) && lv[1].same(&ch.ket[1]) && *a == ma && *b == mb
                    });
                    let k = match pos {
                        Some(k) => {
                            let d = inter[k].3;
                            if (d - ch.defect).abs() > 1e-9 * d.abs().max(1.0) {
                                return Err(Error::InvalidArgument(
                                    "channels sharing an intermediate pair state disagree on the defect".into(),
                                ));
                            }
                            k
                        }
                        None => {
                            inter.push((ch.ket, ma, mb, ch.defect, CVec::zeros(n)));
                            inter.len() - 1
                        }
                    };
                    inter[k].4[i] += v;
                }
            }
        }
    }
    let mut h = CMat::zeros(n, n);
    for (_, _, _, d, v) in &inter {
        h -= v * v.adjoint() * c(1.0 / d, 0.0);
    }
    let h = (&h + h.adjoint()) * c(0.5, 0.0);
    OperatorMatrix::hermitian(h)
}

/// Column names of the channel table, in order.
pub const CHANNEL_HEADER: [&str; 15] = [
    "nA",
    "lA",
    "jA",
    "nB",
    "lB",
    "jB",
    "na",
    "la",
    "ja",
    "nb",
    "lb",
    "jb",
    "dA_ea0",
    "dB_ea0",
    "defect_ghz",
];

/// Parses a whitespace-separated channel table.
///
/// The first non-blank line must be the header `# nA lA jA nB lB jB na la ja nb lb jb dA_ea0 dB_ea0 defect_ghz`.
/// Capital letters are the manifold levels, lower case the intermediate levels.
/// Reduced elements are in e a0; the defect is in h x GHz and is converted to rad/us here.
/// Further lines starting with `#` are comments.
pub fn parse_channel_table(text: &str) -> Result<Vec<Channel>> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, head) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty channel table".into()))?;
    let cols: Vec<&str> = head.trim_start_matches('#').split_whitespace().collect();
    if cols != CHANNEL_HEADER {
        return Err(Error::Parse(format!(
            "unexpected header, want: # {}",
            CHANNEL_HEADER.join(" ")
        )));
    }
    let mut out = Vec::new();
    for (ln, line) in lines {
        let line = line.trim();
        if line.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != CHANNEL_HEADER.len() {
            return Err(Error::Parse(format!(
                "line {}: expected {} fields, got {}",
                ln + 1,
                CHANNEL_HEADER.len(),
                f.len()
            )));
        }
        let num = |k: usize| -> Result<f64> {
            f64::from_str(f[k])
                .map_err(|_| Error::Parse(format!("line {}: bad number {:?}", ln + 1, f[k])))
        };
        let int = |k: usize| -> Result<u32> {
            u32::from_str(f[k])
                .map_err(|_| Error::Parse(format!("line {}: bad integer {:?}", ln + 1, f[k])))
        };
        let lvl = |k: usize| -> Result<Level> { Ok(Level::new(int(k)?, int(k + 1)?, num(k + 2)?)) };
        out.push(Channel {
            bra: [lvl(0)?, lvl(3)?],
            ket: [lvl(6)?, lvl(9)?],
            reduced: [num(12)?, num(13)?],
            defect: crate::interact::ghz_to_rad_us(num(14)?),
        });
    }
    Ok(out)
}
