//! Truncated power series in `t` whose coefficients are polynomials in `q`,
//! with exact rational coefficients, and a fixed-point solver.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;

/// `Σ c_{i,j} q^i t^j` modulo `t^{t_trunc+1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries2 {
    // rows[j] maps the q-degree i to the coefficient of q^i t^j.
    rows: Vec<BTreeMap<usize, BigRational>>,
}

impl TruncatedSeries2 {
    pub fn zero(t_trunc: usize) -> Self {
        Self {
            rows: vec![BTreeMap::new(); t_trunc + 1],
        }
    }

    pub fn one(t_trunc: usize) -> Self {
        Self::monomial(BigRational::one(), 0, 0, t_trunc)
    }

    /// `c q^i t^j`, zero if `j` exceeds the truncation.
    pub fn monomial(c: BigRational, i: usize, j: usize, t_trunc: usize) -> Self {
        let mut s = Self::zero(t_trunc);
        s.add_coeff(i, j, c);
        s
    }

    /// A univariate series in `t` from integer coefficients.
    pub fn from_t_coeffs(coeffs: &[i64], t_trunc: usize) -> Self {
        let mut s = Self::zero(t_trunc);
        for (j, &c) in coeffs.iter().enumerate() {
            s.add_coeff(0, j, BigRational::from_integer(c.into()));
        }
        s
    }

    pub fn t_trunc(&self) -> usize {
        self.rows.len() - 1
    }

    fn add_coeff(&mut self, i: usize, j: usize, c: BigRational) {
        if j >= self.rows.len() || c.is_zero() {
            return;
        }
        let row = &mut self.rows[j];
        let e = row.entry(i).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            row.remove(&i);
        }
    }

    /// The coefficient of `q^i t^j`.
    pub fn coeff(&self, i: usize, j: usize) -> BigRational {
        self.rows
            .get(j)
            .and_then(|r| r.get(&i))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// The coefficient of `t^j` as a list of q-coefficients (q-degree ascending).
    pub fn t_coeff(&self, j: usize) -> Vec<BigRational> {
        match self.rows.get(j) {
            Some(row) => {
                let top = row.keys().next_back().map_or(0, |&i| i + 1);
                (0..top).map(|i| self.coeff(i, j)).collect()
            }
            None => Vec::new(),
        }
    }

    /// All nonzero coefficients as `(q-degree, t-degree, value)`.
    pub fn terms(&self) -> Vec<(usize, usize, BigRational)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(j, row)| row.iter().map(move |(&i, c)| (i, j, c.clone())))
            .collect()
    }

    pub fn is_integral(&self) -> bool {
        self.rows
            .iter()
            .flat_map(BTreeMap::values)
            .all(BigRational::is_integer)
    }

    /// Sets `q = 1`. Fails if a coefficient is not an integer.
    pub fn at_q_one(&self) -> Result<Vec<BigInt>> {
        if !self.is_integral() {
            return Err(Error::InvalidElement(
                "non-integral series coefficient".into(),
            ));
        }
        Ok(self
            .rows
            .iter()
            .map(|row| row.values().map(|c| c.to_integer()).sum())
            .collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.truncated(self.t_trunc().min(other.t_trunc()));
        for (i, j, c) in other.terms() {
            out.add_coeff(i, j, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|(&i, c)| (i, -c)).collect())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.t_trunc().min(other.t_trunc());
        let mut out = Self::zero(n);
        for (j1, r1) in self.rows.iter().enumerate().take(n + 1) {
            for (j2, r2) in other.rows.iter().enumerate().take(n + 1 - j1) {
                for (i1, c1) in r1 {
                    for (i2, c2) in r2 {
                        out.add_coeff(i1 + i2, j1 + j2, c1 * c2);
                    }
                }
            }
        }
        out
    }

    /// Multiplies by `q^i t^j`.
    pub fn shift(&self, i: usize, j: usize) -> Self {
        let mut out = Self::zero(self.t_trunc());
        for (a, b, c) in self.terms() {
            out.add_coeff(a + i, b + j, c);
        }
        out
    }

    pub fn truncated(&self, t_trunc: usize) -> Self {
        let mut rows = self.rows.clone();
        rows.resize(t_trunc + 1, BTreeMap::new());
        Self { rows }
    }

    /// `p(self)` for a polynomial `p`. Always defined since `p` is finite.
    pub fn substitute_into_poly(&self, p: &Poly) -> Self {
        let n = self.t_trunc();
        p.raw().iter().rev().fold(Self::zero(n), |acc, c| {
            acc.mul(self).add(&Self::monomial(
                BigRational::from_integer(c.clone()),
                0,
                0,
                n,
            ))
        })
    }

    /// `outer(inner)` where `outer` is a truncated series in `t` alone and
    /// `inner` has no constant term.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self> {
        if !inner.rows[0].is_empty() {
            return Err(Error::ConstantTerm);
        }
        let n = outer.t_trunc().min(inner.t_trunc());
        let mut out = Self::zero(n);
        let mut power = Self::one(n);
        for j in 0..=n {
            for (i, c) in &outer.rows[j] {
                let term = power.shift(*i, 0);
                for (a, b, d) in term.terms() {
                    out.add_coeff(a, b, d * c);
                }
            }
            power = power.mul(inner);
        }
        Ok(out)
    }
}

/// Solves `S = F(S)` by iterating from `F(0)` exactly `t_trunc + 1` times,
/// then checks the result is a fixed point. `F` must raise the t-valuation of
/// any perturbation of its argument.
pub fn fixed_point<F>(f: F, t_trunc: usize) -> Result<TruncatedSeries2>
where
    F: Fn(&TruncatedSeries2) -> TruncatedSeries2,
{
    let mut s = f(&TruncatedSeries2::zero(t_trunc)).truncated(t_trunc);
    for _ in 0..=t_trunc {
        s = f(&s).truncated(t_trunc);
    }
    if f(&s).truncated(t_trunc) != s {
        return Err(Error::NoFixedPoint);
    }
    Ok(s)
}

/// Formats a q-polynomial, lowest degree first.
fn q_poly_string(coeffs: &[BigRational]) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { "-" } else { "+" });
        }
        let a = c.abs();
        let mono = match i {
            0 => String::new(),
            1 => "q".to_string(),
            _ => format!("q^{i}"),
        };
        if i == 0 || !a.is_one() {
            out.push_str(&a.to_string());
        }
        out.push_str(&mono);
    }
    out
}

impl fmt::Display for TruncatedSeries2 {
    /// Ascending t-degree, each coefficient a q-polynomial with its positive
    /// integer content pulled out, e.g. `1 + (1+q)t + 2(1+q+q^2)t^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for j in 0..self.rows.len() {
            let row = self.t_coeff(j);
            if row.iter().all(Zero::is_zero) {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let tm = match j {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{j}"),
            };
            let nonzero: Vec<&BigRational> = row.iter().filter(|c| !c.is_zero()).collect();
            let content = if row.iter().all(BigRational::is_integer) {
                nonzero
                    .iter()
                    .fold(BigInt::zero(), |g, c| g.gcd(&c.to_integer()))
            } else {
                BigInt::one()
            };
            if nonzero.len() == 1 {
                let s = q_poly_string(&row);
                let s = if s == "1" && j > 0 { String::new() } else { s };
                write!(f, "{s}{tm}")?;
            } else {
                let reduced: Vec<BigRational> = row
                    .iter()
                    .map(|c| c / BigRational::from_integer(content.clone()))
                    .collect();
                let k = if content.is_one() {
                    String::new()
                } else {
                    content.to_string()
                };
                write!(f, "{k}({}){tm}", q_poly_string(&reduced))?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TruncatedSeries2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &TruncatedSeries2) -> Vec<BigInt> {
        s.at_q_one().unwrap()
    }

    #[test]
    fn product_of_one_plus_and_minus_t() {
        let a = TruncatedSeries2::from_t_coeffs(&[1, 1], 2);
        let b = TruncatedSeries2::from_t_coeffs(&[1, -1], 2);
        assert_eq!(a.mul(&b), TruncatedSeries2::from_t_coeffs(&[1, 0, -1], 2));
    }

    #[test]
    fn substitution_into_square() {
        let x = TruncatedSeries2::from_t_coeffs(&[0, 1, 1], 3);
        let r = Poly::from_i64s(&[0, 0, 1]);
        assert_eq!(
            x.substitute_into_poly(&r),
            TruncatedSeries2::from_t_coeffs(&[0, 0, 1, 2], 3)
        );
        let sq = TruncatedSeries2::from_t_coeffs(&[0, 0, 1], 3);
        assert_eq!(
            TruncatedSeries2::compose(&sq, &x).unwrap(),
            TruncatedSeries2::from_t_coeffs(&[0, 0, 1, 2], 3)
        );
        let with_constant = TruncatedSeries2::from_t_coeffs(&[1, 1], 3);
        assert_eq!(
            TruncatedSeries2::compose(&sq, &with_constant),
            Err(Error::ConstantTerm)
        );
    }

    #[test]
    fn catalan_fixed_point() {
        let s = fixed_point(|s| TruncatedSeries2::one(4).add(&s.mul(s).shift(0, 1)), 4).unwrap();
        let expect: Vec<BigInt> = [1, 1, 2, 5, 14].iter().map(|&c| c.into()).collect();
        assert_eq!(ints(&s), expect);
    }

    #[test]
    fn divergent_map_is_reported() {
        // S = 1 + S has no fixed point.
        let r = fixed_point(|s| TruncatedSeries2::one(3).add(s), 3);
        assert_eq!(r, Err(Error::NoFixedPoint));
    }

    #[test]
    fn display_factors_content() {
        let mut s = TruncatedSeries2::one(2);
        s = s.add(&TruncatedSeries2::from_t_coeffs(&[0, 1], 2));
        s = s.add(&TruncatedSeries2::monomial(BigRational::one(), 1, 1, 2));
        for i in 0..3 {
            s = s.add(&TruncatedSeries2::monomial(
                BigRational::from_integer(2.into()),
                i,
                2,
                2,
            ));
        }
        assert_eq!(s.to_string(), "1 + (1+q)t + 2(1+q+q^2)t^2");
    }
}
