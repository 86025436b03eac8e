//! Lucas, Chebyshev and R-sequences, evaluated pointwise over the integers.
//!
//! Every sequence here obeys a second-order recurrence
//! `X_{k+1} = P·X_k − Q·X_{k−1}`; they differ only in seeds and multiplier.
//!
//! | sequence        | X_0 | X_1    | P       | Q |
//! |-----------------|-----|--------|---------|---|
//! | `U_n(P,Q)`      | 0   | 1      | P       | Q |
//! | `V_n(P,Q)`      | 2   | P      | P       | Q |
//! | `T_n(x)`        | 1   | x      | 2x      | 1 |
//! | `U^cheb_n(x)`   | 1   | 2x     | 2x      | 1 |
//! | `R_{n,s}(b)`    | s   | b      | 2b/s    | 1 |
//! | `R*_{n,s}(b)`   | 1   | 2b/s   | 2b/s    | 1 |

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Parameters `(P, Q)` of a Lucas sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LucasParams {
    pub p: BigInt,
    pub q: BigInt,
}

impl LucasParams {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Self {
        LucasParams {
            p: p.into(),
            q: q.into(),
        }
    }
}

/// Parameters of the scaled Chebyshev family `R_{n,s}(b) = s·T_n(b/s)`.
///
/// Construction only checks positivity; integrality (`s | 2b`) is checked by
/// the evaluators so callers get a precise [`Error::NonIntegralFamily`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RFamilyParams {
    s: BigInt,
    b: BigInt,
}

impl RFamilyParams {
    pub fn new(s: impl Into<BigInt>, b: impl Into<BigInt>) -> Result<Self> {
        let s = s.into();
        let b = b.into();
        require_positive("s", &s)?;
        require_positive("b", &b)?;
        Ok(RFamilyParams { s, b })
    }

    pub fn s(&self) -> &BigInt {
        &self.s
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn is_integral(&self) -> bool {
        (&self.b * 2u32).is_multiple_of(&self.s)
    }

    /// The recurrence multiplier `2b/s`.
    pub fn multiplier(&self) -> Result<BigInt> {
        let (k, r) = (&self.b * 2u32).div_rem(&self.s);
        if r.is_zero() {
            Ok(k)
        } else {
            Err(Error::NonIntegralFamily {
                s: self.s.clone(),
                b: self.b.clone(),
            })
        }
    }

    pub fn r_sequence(&self) -> Result<Recurrence> {
        let k = self.multiplier()?;
        Ok(Recurrence::new(
            self.s.clone(),
            self.b.clone(),
            k,
            BigInt::one(),
        ))
    }

    pub fn r_star_sequence(&self) -> Result<Recurrence> {
        let k = self.multiplier()?;
        Ok(Recurrence::new(BigInt::one(), k.clone(), k, BigInt::one()))
    }
}

pub(crate) fn require_positive(what: &'static str, value: &BigInt) -> Result<()> {
    if value.is_positive() {
        Ok(())
    } else {
        Err(Error::NonPositive {
            what,
            value: value.clone(),
        })
    }
}

/// Unbounded iterator over `X_0, X_1, …` for `X_{k+1} = P·X_k − Q·X_{k−1}`.
#[derive(Clone, Debug)]
pub struct Recurrence {
    cur: BigInt,
    next: BigInt,
    p: BigInt,
    q: BigInt,
}

impl Recurrence {
    pub fn new(x0: BigInt, x1: BigInt, p: BigInt, q: BigInt) -> Self {
        Recurrence {
            cur: x0,
            next: x1,
            p,
            q,
        }
    }

    pub fn lucas_u(params: &LucasParams) -> Self {
        Self::new(
            BigInt::zero(),
            BigInt::one(),
            params.p.clone(),
            params.q.clone(),
        )
    }

    pub fn lucas_v(params: &LucasParams) -> Self {
        Self::new(
            BigInt::from(2),
            params.p.clone(),
            params.p.clone(),
            params.q.clone(),
        )
    }

    /// Skips ahead and returns `X_n`.
    pub fn nth_term(mut self, n: usize) -> BigInt {
        for _ in 0..n {
            self.step();
        }
        self.cur
    }

    fn step(&mut self) {
        let after = &self.p * &self.next - &self.q * &self.cur;
        self.cur = std::mem::replace(&mut self.next, after);
    }
}

impl Iterator for Recurrence {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        let out = self.cur.clone();
        self.step();
        Some(out)
    }
}

pub fn lucas_u(params: &LucasParams, n: usize) -> BigInt {
    Recurrence::lucas_u(params).nth_term(n)
}

pub fn lucas_v(params: &LucasParams, n: usize) -> BigInt {
    Recurrence::lucas_v(params).nth_term(n)
}

fn chebyshev_first_kind(x: &BigInt) -> Result<Recurrence> {
    require_positive("x", x)?;
    Ok(Recurrence::new(
        BigInt::one(),
        x.clone(),
        x * 2u32,
        BigInt::one(),
    ))
}

/// First-kind Chebyshev polynomial `T_n(x)`: `T_0 = 1`, `T_1 = x`.
pub fn cheb_t(n: usize, x: &BigInt) -> Result<BigInt> {
    Ok(chebyshev_first_kind(x)?.nth_term(n))
}

/// Second-kind Chebyshev polynomial `U_n(x)`: `U_0 = 1`, `U_1 = 2x`.
pub fn cheb_u(n: usize, x: &BigInt) -> Result<BigInt> {
    require_positive("x", x)?;
    let two_x = x * 2u32;
    Ok(Recurrence::new(BigInt::one(), two_x.clone(), two_x, BigInt::one()).nth_term(n))
}

/// Iterator over `T_0(x), T_1(x), …`.
pub fn cheb_t_sequence(x: &BigInt) -> Result<Recurrence> {
    chebyshev_first_kind(x)
}

pub fn r_val(fam: &RFamilyParams, n: usize) -> Result<BigInt> {
    Ok(fam.r_sequence()?.nth_term(n))
}

pub fn r_star_val(fam: &RFamilyParams, n: usize) -> Result<BigInt> {
    Ok(fam.r_star_sequence()?.nth_term(n))
}

/// `R_0(b), …, R_{len−1}(b)`.
pub fn r_prefix(fam: &RFamilyParams, len: usize) -> Result<Vec<BigInt>> {
    Ok(fam.r_sequence()?.take(len).collect())
}

/// Shared memo of R-sequence prefixes keyed by `(s, b)`.
///
/// Lookups extend the stored prefix on demand, so a cached value is always
/// the same number the plain recurrence would produce.
#[derive(Debug, Default)]
pub struct PrefixCache {
    prefixes: Mutex<HashMap<(BigInt, BigInt), Vec<BigInt>>>,
}

impl PrefixCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn r_val(&self, fam: &RFamilyParams, n: usize) -> Result<BigInt> {
        let k = fam.multiplier()?;
        let mut map = self.prefixes.lock().unwrap_or_else(|e| e.into_inner());
        let prefix = map
            .entry((fam.s.clone(), fam.b.clone()))
            .or_insert_with(|| vec![fam.s.clone(), fam.b.clone()]);
        while prefix.len() <= n {
            let len = prefix.len();
            let next = &k * &prefix[len - 1] - &prefix[len - 2];
            prefix.push(next);
        }
        Ok(prefix[n].clone())
    }

    pub fn len(&self) -> usize {
        self.prefixes.lock().map(|m| m.len()).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
