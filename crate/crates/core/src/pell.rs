//! Pell equations solved by R-sequences, with an exhaustive-scan oracle.
//!
//! Two forms occur:
//!
//! * `z² − d·a² = s²` with `d = y² − s²`, solved by `(R_n(y), R*_{n−1}(y))`;
//! * `a² − d·z² = −s²·d` with `y = R_n(p)`, solved by
//!   `(R_m(p), s·(R_{n+m}(p) − R_{|n−m|}(p))/2)`.
//!
//! For `s = 1` these are the classical Chebyshev solutions of
//! `z² − (y²−1)a² = 1`; for `s = 2` they are the Lucas/Fibonacci pairs.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::arith::{exact_sqrt, is_square};
use crate::error::{Error, Result};
use crate::seqcore::{r_prefix, r_star_val, r_val, RFamilyParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PellForm {
    /// `z² − d·a² = rhs`
    ZSquared,
    /// `a² − d·z² = rhs`
    ASquared,
}

impl PellForm {
    pub fn as_str(self) -> &'static str {
        match self {
            PellForm::ZSquared => "z2-da2",
            PellForm::ASquared => "a2-dz2",
        }
    }
}

impl fmt::Display for PellForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PellForm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "z2-da2" => Ok(PellForm::ZSquared),
            "a2-dz2" => Ok(PellForm::ASquared),
            other => Err(format!(
                "unknown Pell form {other:?} (expected z2-da2 or a2-dz2)"
            )),
        }
    }
}

/// A general Pell equation with non-square `d ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellInstance {
    d: BigInt,
    rhs: BigInt,
    form: PellForm,
}

impl PellInstance {
    pub fn new(d: impl Into<BigInt>, rhs: impl Into<BigInt>, form: PellForm) -> Result<Self> {
        let d = d.into();
        if d < BigInt::from(2) || is_square(&d) {
            return Err(Error::DegenerateD { d });
        }
        Ok(PellInstance {
            d,
            rhs: rhs.into(),
            form,
        })
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn rhs(&self) -> &BigInt {
        &self.rhs
    }

    pub fn form(&self) -> PellForm {
        self.form
    }

    /// Left-hand side evaluated at `(z, a)`.
    pub fn lhs(&self, z: &BigInt, a: &BigInt) -> BigInt {
        match self.form {
            PellForm::ZSquared => z * z - &self.d * a * a,
            PellForm::ASquared => a * a - &self.d * z * z,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PellSolution {
    pub z: BigInt,
    pub a: BigInt,
}

impl PellSolution {
    pub fn new(z: impl Into<BigInt>, a: impl Into<BigInt>) -> Self {
        PellSolution {
            z: z.into(),
            a: a.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    FamilyOne,
    FamilyTwo,
    Oracle,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::FamilyOne => "family-one",
            Provenance::FamilyTwo => "family-two",
            Provenance::Oracle => "oracle",
        }
    }
}

/// A parametric solution together with the equation it solves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySolution {
    pub instance: PellInstance,
    pub solution: PellSolution,
}

pub fn verify_pell(inst: &PellInstance, sol: &PellSolution) -> bool {
    inst.lhs(&sol.z, &sol.a) == inst.rhs
}

fn pell_d(s: &BigInt, y: &BigInt) -> Result<BigInt> {
    let d = y * y - s * s;
    if !y.is_positive() || y <= s || is_square(&d) {
        return Err(Error::DegenerateD { d });
    }
    Ok(d)
}

fn require_index(what: &'static str, value: usize, min: usize) -> Result<()> {
    if value < min {
        Err(Error::IndexTooSmall { what, value, min })
    } else {
        Ok(())
    }
}

/// `z = R_n(y)`, `a = R*_{n−1}(y)` solving `z² − (y²−s²)a² = s²`.
///
/// `fam.b()` plays the role of `y`.
pub fn pell_family_one(fam: &RFamilyParams, n: usize) -> Result<FamilySolution> {
    require_index("n", n, 1)?;
    fam.multiplier()?;
    let s = fam.s();
    let d = pell_d(s, fam.b())?;
    let z = r_val(fam, n)?;
    let a = r_star_val(fam, n - 1)?;
    let instance = PellInstance {
        d,
        rhs: s * s,
        form: PellForm::ZSquared,
    };
    let solution = PellSolution { z, a };
    assert!(
        verify_pell(&instance, &solution),
        "family-one identity failed"
    );
    Ok(FamilySolution { instance, solution })
}

/// `z = R_m(p)`, `a = s·(R_{n+m}(p) − R_{|n−m|}(p))/2` solving
/// `a² − d·z² = −s²·d` with `d = R_n(p)² − s²`.
///
/// `fam.b()` plays the role of `p`.
pub fn pell_family_two(fam: &RFamilyParams, n: usize, m: usize) -> Result<FamilySolution> {
    require_index("n", n, 1)?;
    require_index("m", m, 1)?;
    let r = r_prefix(fam, n + m + 1)?;
    let s = fam.s();
    let y = &r[n];
    let d = pell_d(s, y)?;
    let twice_a = s * (&r[n + m] - &r[n.abs_diff(m)]);
    if twice_a.is_odd() {
        return Err(Error::NonIntegralA { value: twice_a });
    }
    let a = twice_a / 2;
    let z = r[m].clone();
    for v in [&a, &z] {
        if !v.is_positive() {
            return Err(Error::NonPositiveResult { value: v.clone() });
        }
    }
    let instance = PellInstance {
        rhs: -(s * s * &d),
        d,
        form: PellForm::ASquared,
    };
    let solution = PellSolution { z, a };
    assert!(
        verify_pell(&instance, &solution),
        "family-two identity failed"
    );
    Ok(FamilySolution { instance, solution })
}

/// All solutions with `1 ≤ z ≤ bound` and `a ≥ 1`, ascending in `z`.
pub fn pell_oracle(inst: &PellInstance, bound: u64) -> Vec<PellSolution> {
    pell_oracle_with(inst, bound, false)
}

/// As [`pell_oracle`], optionally keeping `a = 0` solutions.
pub fn pell_oracle_with(inst: &PellInstance, bound: u64, include_zero: bool) -> Vec<PellSolution> {
    (1..=bound)
        .into_par_iter()
        .filter_map(|z| {
            let z = BigInt::from(z);
            let a = solve_for_a(inst, &z)?;
            (include_zero || !a.is_zero()).then_some(PellSolution { z, a })
        })
        .collect()
}

fn solve_for_a(inst: &PellInstance, z: &BigInt) -> Option<BigInt> {
    match inst.form {
        PellForm::ZSquared => {
            let (q, r) = (z * z - &inst.rhs).div_rem(&inst.d);
            if !r.is_zero() {
                return None;
            }
            exact_sqrt(&q)
        }
        PellForm::ASquared => exact_sqrt(&(&inst.rhs + &inst.d * z * z)),
    }
}
