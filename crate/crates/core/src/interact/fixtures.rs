//! Published van der Waals matrices for Rb nS and nP pair manifolds.
//! Entries are h x GHz um^6; `at(L)` gives rad/us at separation L (um).

use crate::qcore::{cr, CMat, OperatorMatrix};

#[derive(Debug, Clone)]
pub struct VdwFixture {
    pub name: &'static str,
    pub basis: Vec<&'static str>,
    pub theta: f64,
    pub c6_ghz: CMat,
}

impl VdwFixture {
    pub fn at(&self, l: f64) -> OperatorMatrix {
        let s = super::ghz_to_rad_us(1.0) / l.powi(6);
        OperatorMatrix::hermitian(self.c6_ghz.map(|x| x * s)).expect("fixture is symmetric")
    }
}

fn mat(n: usize, v: &[f64]) -> CMat {
    CMat::from_row_slice(n, n, &v.iter().map(|&x| cr(x)).collect::<Vec<_>>())
}

const SS_BASIS: [&str; 4] = ["r+;r+", "r+;r-", "r-;r+", "r-;r-"];

pub fn s100_s100_theta0() -> VdwFixture {
    VdwFixture {
        name: "100s-100s theta=0",
        basis: SS_BASIS.to_vec(),
        theta: 0.0,
        c6_ghz: mat(
            4,
            &[
                56200., 0., 0., 0., 0., 56980., 1573., 0., 0., 1573., 56980., 0., 0., 0., 0.,
                56200.,
            ],
        ),
    }
}

pub fn s100_s100_theta_quarter() -> VdwFixture {
    VdwFixture {
        name: "100s-100s theta=pi/4",
        basis: SS_BASIS.to_vec(),
        theta: std::f64::consts::FRAC_PI_4,
        c6_ghz: mat(
            4,
            &[
                56790., 590., 590., -590., 590., 56400., 983., -590., 590., 983., 56400., -590.,
                -590., -590., -590., 56790.,
            ],
        ),
    }
}

pub fn s100_s100_theta_half() -> VdwFixture {
    VdwFixture {
        name: "100s-100s theta=pi/2",
        basis: SS_BASIS.to_vec(),
        theta: std::f64::consts::FRAC_PI_2,
        c6_ghz: mat(
            4,
            &[
                57380., 0., 0., -1180., 0., 55800., 393., 0., 0., 393., 55800., 0., -1180., 0., 0.,
                57380.,
            ],
        ),
    }
}

pub fn s97_s100_theta0() -> VdwFixture {
    let v1 = [
        -89180., 0., 0., 0., 0., -59780., 58800., 0., 0., 58800., -59780., 0., 0., 0., 0., -89180.,
    ];
    let v2 = [
        -537., 0., 0., 0., 0., -375., 324., 0., 0., 324., -375., 0., 0., 0., 0., -537.,
    ];
    let mut m = CMat::zeros(8, 8);
    for i in 0..4 {
        for j in 0..4 {
            m[(i, j)] = cr(v1[4 * i + j]);
            m[(i + 4, j + 4)] = cr(v1[4 * i + j]);
            m[(i, j + 4)] = cr(v2[4 * i + j]);
            m[(i + 4, j)] = cr(v2[4 * i + j]);
        }
    }
    VdwFixture {
        name: "97s-100s theta=0",
        basis: vec![
            "R+;r+", "R-;r+", "R+;r-", "R-;r-", "r+;R+", "r-;R+", "r+;R-", "r-;R-",
        ],
        theta: 0.0,
        c6_ghz: m,
    }
}

pub fn p100_p100_theta0() -> VdwFixture {
    VdwFixture {
        name: "100p-100p theta=0",
        basis: SS_BASIS.to_vec(),
        theta: 0.0,
        c6_ghz: mat(
            4,
            &[
                2108., 0., 0., 0., 0., -3492., -11200., 0., 0., -11200., -3492., 0., 0., 0., 0.,
                2108.,
            ],
        ),
    }
}

pub fn p100_p100_theta_half() -> VdwFixture {
    VdwFixture {
        name: "100p-100p theta=pi/2",
        basis: SS_BASIS.to_vec(),
        theta: std::f64::consts::FRAC_PI_2,
        c6_ghz: mat(
            4,
            &[
                -6292., 0., 0., 8400., 0., 4908., -2800., 0., 0., -2800., 4908., 0., 8400., 0., 0.,
                -6292.,
            ],
        ),
    }
}

pub fn all() -> Vec<VdwFixture> {
    vec![
        s100_s100_theta0(),
        s100_s100_theta_quarter(),
        s100_s100_theta_half(),
        s97_s100_theta0(),
        p100_p100_theta0(),
        p100_p100_theta_half(),
    ]
}
