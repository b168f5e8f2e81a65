//! High-precision evaluation of `c(s)` and `c(s, xi_4)` for checking their
//! analytic facts at integers.
//!
//! `zeta(s, a)` comes from Euler-Maclaurin summation, `Gamma` from Stirling's
//! series after shifting the argument to real part >= 30, and the mod-4
//! L-function from `4^{-s} (zeta(s, 1/4) - zeta(s, 3/4))`.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const RM: RoundingMode = RoundingMode::ToEven;

/// Complex number over `BigFloat`.
#[derive(Clone, Debug)]
pub struct Complex {
    pub re: BigFloat,
    pub im: BigFloat,
}

/// Evaluation context: working precision, constants and Bernoulli numbers.
pub struct Numeric {
    p: usize,
    cc: Consts,
    /// `B_{2k} / (2k)!` for `k = 1..=terms`.
    bern_fact: Vec<BigFloat>,
    /// `B_{2k} / (2k (2k - 1))` for Stirling's series.
    bern_stirling: Vec<BigFloat>,
    /// Terms summed directly before the Euler-Maclaurin tail.
    direct: usize,
}

fn bernoulli_even(k: usize) -> Vec<BigRational> {
    let n = 2 * k;
    let mut b: Vec<BigRational> = vec![BigRational::one()];
    for m in 1..=n {
        let mut s = BigRational::zero();
        let mut binom = BigInt::one();
        for (j, bj) in b.iter().enumerate() {
            s += BigRational::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
    }
    (1..=k).map(|i| b[2 * i].clone()).collect()
}

impl Numeric {
    /// `bits` of working precision; 320 bits give about 96 digits.
    pub fn new(bits: usize) -> Result<Self> {
        let mut cc = Consts::new().map_err(|e| Error::Precision(format!("{e:?}")))?;
        let terms = 48;
        let b = bernoulli_even(terms);
        let p = bits;
        let mut bern_fact = Vec::new();
        let mut bern_stirling = Vec::new();
        let mut fact = BigRational::one();
        for (i, bk) in b.iter().enumerate() {
            let k = 2 * (i + 1);
            fact *= BigRational::from_integer(BigInt::from(k * (k - 1)));
            bern_fact.push(rational_to_float(&(bk / &fact), p, &mut cc));
            bern_stirling.push(rational_to_float(
                &(bk / BigRational::from_integer(BigInt::from(k * (k - 1)))),
                p,
                &mut cc,
            ));
        }
        Ok(Numeric {
            p,
            cc,
            bern_fact,
            bern_stirling,
            direct: 64,
        })
    }

    pub fn precision(&self) -> usize {
        self.p
    }

    pub fn real(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.p)
    }

    pub fn int(&self, n: i64) -> BigFloat {
        BigFloat::from_i64(n, self.p)
    }

    pub fn cx(&self, re: f64, im: f64) -> Complex {
        Complex {
            re: self.real(re),
            im: self.real(im),
        }
    }

    pub fn from_real(&self, re: BigFloat) -> Complex {
        Complex {
            re,
            im: self.int(0),
        }
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.p, RM)
    }

    pub fn add(&self, a: &Complex, b: &Complex) -> Complex {
        Complex {
            re: a.re.add(&b.re, self.p, RM),
            im: a.im.add(&b.im, self.p, RM),
        }
    }

    pub fn sub(&self, a: &Complex, b: &Complex) -> Complex {
        Complex {
            re: a.re.sub(&b.re, self.p, RM),
            im: a.im.sub(&b.im, self.p, RM),
        }
    }

    pub fn mul(&self, a: &Complex, b: &Complex) -> Complex {
        let p = self.p;
        Complex {
            re: a.re.mul(&b.re, p, RM).sub(&a.im.mul(&b.im, p, RM), p, RM),
            im: a.re.mul(&b.im, p, RM).add(&a.im.mul(&b.re, p, RM), p, RM),
        }
    }

    pub fn scale(&self, a: &Complex, x: &BigFloat) -> Complex {
        Complex {
            re: a.re.mul(x, self.p, RM),
            im: a.im.mul(x, self.p, RM),
        }
    }

    pub fn div(&self, a: &Complex, b: &Complex) -> Complex {
        let p = self.p;
        let d = b.re.mul(&b.re, p, RM).add(&b.im.mul(&b.im, p, RM), p, RM);
        let conj = Complex {
            re: b.re.clone(),
            im: b.im.neg(),
        };
        let n = self.mul(a, &conj);
        Complex {
            re: n.re.div(&d, p, RM),
            im: n.im.div(&d, p, RM),
        }
    }

    pub fn abs(&mut self, a: &Complex) -> BigFloat {
        let p = self.p;
        a.re.mul(&a.re, p, RM)
            .add(&a.im.mul(&a.im, p, RM), p, RM)
            .sqrt(p, RM)
    }

    pub fn exp(&mut self, a: &Complex) -> Complex {
        let p = self.p;
        let m = a.re.exp(p, RM, &mut self.cc);
        Complex {
            re: m.mul(&a.im.cos(p, RM, &mut self.cc), p, RM),
            im: m.mul(&a.im.sin(p, RM, &mut self.cc), p, RM),
        }
    }

    fn atan2(&mut self, y: &BigFloat, x: &BigFloat) -> BigFloat {
        let p = self.p;
        let pi = self.pi();
        if x.is_zero() {
            let h = pi.div(&self.int(2), p, RM);
            return if y.is_negative() { h.neg() } else { h };
        }
        let t = y.div(x, p, RM).atan(p, RM, &mut self.cc);
        if x.is_positive() {
            t
        } else if y.is_negative() {
            t.sub(&pi, p, RM)
        } else {
            t.add(&pi, p, RM)
        }
    }

    /// Principal logarithm.
    pub fn ln(&mut self, a: &Complex) -> Complex {
        let p = self.p;
        let m2 = a.re.mul(&a.re, p, RM).add(&a.im.mul(&a.im, p, RM), p, RM);
        let re = m2.ln(p, RM, &mut self.cc).div(&self.int(2), p, RM);
        let im = self.atan2(&a.im, &a.re);
        Complex { re, im }
    }

    /// `x^s` for real `x > 0`.
    pub fn rpow(&mut self, x: &BigFloat, s: &Complex) -> Complex {
        let l = x.ln(self.p, RM, &mut self.cc);
        let e = self.scale(s, &l);
        self.exp(&e)
    }

    /// Euler-Maclaurin sum for `zeta(s, a)` without the term `A^{1-s}/(s-1)`,
    /// where `A = N + a`. Returns the partial value and `A`.
    fn hurwitz_regular(&mut self, s: &Complex, a: &BigFloat) -> (Complex, BigFloat) {
        let p = self.p;
        let neg_s = Complex {
            re: s.re.neg(),
            im: s.im.neg(),
        };
        let mut sum = self.cx(0.0, 0.0);
        for n in 0..self.direct {
            let x = self.int(n as i64).add(a, p, RM);
            let t = self.rpow(&x, &neg_s);
            sum = self.add(&sum, &t);
        }
        let big_a = self.int(self.direct as i64).add(a, p, RM);
        let a_neg_s = self.rpow(&big_a, &neg_s);
        sum = self.add(&sum, &self.scale(&a_neg_s, &self.real(0.5)));
        // sum_k B_2k/(2k)! (s)_{2k-1} A^{-s-2k+1}
        let inv_a = self.int(1).div(&big_a, p, RM);
        let inv_a2 = inv_a.mul(&inv_a, p, RM);
        let mut rising = s.clone();
        let mut pow = self.scale(&a_neg_s, &inv_a);
        for k in 1..=self.bern_fact.len() {
            let term = self.scale(&self.mul(&rising, &pow), &self.bern_fact[k - 1]);
            sum = self.add(&sum, &term);
            // (s)_{2k+1} = (s)_{2k-1} (s + 2k - 1)(s + 2k)
            let f1 = self.add(s, &self.cx((2 * k - 1) as f64, 0.0));
            let f2 = self.add(s, &self.cx((2 * k) as f64, 0.0));
            rising = self.mul(&self.mul(&rising, &f1), &f2);
            pow = self.scale(&pow, &inv_a2);
        }
        (sum, big_a)
    }

    /// Hurwitz zeta `zeta(s, a)` for `s != 1`.
    pub fn hurwitz(&mut self, s: &Complex, a: &BigFloat) -> Complex {
        let (reg, big_a) = self.hurwitz_regular(s, a);
        let one_minus_s = self.sub(&self.cx(1.0, 0.0), s);
        let num = self.rpow(&big_a, &one_minus_s);
        let den = self.sub(s, &self.cx(1.0, 0.0));
        self.add(&reg, &self.div(&num, &den))
    }

    pub fn zeta(&mut self, s: &Complex) -> Complex {
        let one = self.int(1);
        self.hurwitz(s, &one)
    }

    /// `L(s, xi_4) = sum xi_4(n) n^{-s}`, entire.
    pub fn l_chi4(&mut self, s: &Complex) -> Complex {
        let p = self.p;
        let a1 = self.real(0.25);
        let a3 = self.real(0.75);
        let (r1, big1) = self.hurwitz_regular(s, &a1);
        let (r3, big3) = self.hurwitz_regular(s, &a3);
        let den = self.sub(s, &self.cx(1.0, 0.0));
        let sing = if den.re.is_zero() && den.im.is_zero() {
            let l3 = big3.ln(p, RM, &mut self.cc);
            let l1 = big1.ln(p, RM, &mut self.cc);
            self.from_real(l3.sub(&l1, p, RM))
        } else {
            let oms = self.sub(&self.cx(1.0, 0.0), s);
            let x1 = self.rpow(&big1, &oms);
            let x3 = self.rpow(&big3, &oms);
            self.div(&self.sub(&x1, &x3), &den)
        };
        let diff = self.add(&self.sub(&r1, &r3), &sing);
        let neg_s = Complex {
            re: s.re.neg(),
            im: s.im.neg(),
        };
        let four = self.int(4);
        let f = self.rpow(&four, &neg_s);
        self.mul(&f, &diff)
    }

    /// `Gamma(z)` away from the poles.
    pub fn gamma(&mut self, z: &Complex) -> Complex {
        let p = self.p;
        let mut w = z.clone();
        let mut prod = self.cx(1.0, 0.0);
        let target = self.int(30);
        while w.re < target {
            prod = self.mul(&prod, &w);
            w = self.add(&w, &self.cx(1.0, 0.0));
        }
        // ln Gamma(w) = (w - 1/2) ln w - w + ln(2 pi)/2 + sum B_2k / (2k(2k-1) w^{2k-1})
        let lw = self.ln(&w);
        let half = self.real(0.5);
        let wm = self.sub(&w, &self.from_real(half.clone()));
        let mut lg = self.sub(&self.mul(&wm, &lw), &w);
        let two_pi = self.pi().mul(&self.int(2), p, RM);
        let c = two_pi.ln(p, RM, &mut self.cc).mul(&half, p, RM);
        lg = self.add(&lg, &self.from_real(c));
        let inv_w = self.div(&self.cx(1.0, 0.0), &w);
        let inv_w2 = self.mul(&inv_w, &inv_w);
        let mut pw = inv_w;
        for k in 0..self.bern_stirling.len() {
            lg = self.add(&lg, &self.scale(&pw, &self.bern_stirling[k]));
            pw = self.mul(&pw, &inv_w2);
        }
        let g = self.exp(&lg);
        self.div(&g, &prod)
    }

    /// `zeta*(s) = pi^{-s/2} Gamma(s/2) zeta(s)`.
    pub fn zeta_star(&mut self, s: &Complex) -> Complex {
        let half = self.real(0.5);
        let h = self.scale(s, &half);
        let pi = self.pi();
        let neg_h = Complex {
            re: h.re.neg(),
            im: h.im.neg(),
        };
        let a = self.rpow(&pi, &neg_h);
        let g = self.gamma(&h);
        let z = self.zeta(s);
        self.mul(&self.mul(&a, &g), &z)
    }

    /// `L*(s, xi_4) = pi^{-(s+1)/2} Gamma((s+1)/2) L(s, xi_4)`.
    pub fn l_star(&mut self, s: &Complex) -> Complex {
        let half = self.real(0.5);
        let h = self.scale(&self.add(s, &self.cx(1.0, 0.0)), &half);
        let pi = self.pi();
        let neg_h = Complex {
            re: h.re.neg(),
            im: h.im.neg(),
        };
        let a = self.rpow(&pi, &neg_h);
        let g = self.gamma(&h);
        let l = self.l_chi4(s);
        self.mul(&self.mul(&a, &g), &l)
    }

    /// `c(s) = zeta*(1-s) / zeta*(1+s)`.
    pub fn c(&mut self, s: &Complex) -> Complex {
        let one = self.cx(1.0, 0.0);
        let a = self.zeta_star(&self.sub(&one, s));
        let b = self.zeta_star(&self.add(&one, s));
        self.div(&a, &b)
    }

    /// `c(s, xi_4) = L*(1-s, xi_4) / L*(1+s, xi_4)`.
    pub fn c_xi(&mut self, s: &Complex) -> Complex {
        let one = self.cx(1.0, 0.0);
        let a = self.l_star(&self.sub(&one, s));
        let b = self.l_star(&self.add(&one, s));
        self.div(&a, &b)
    }

    pub fn to_f64(&mut self, x: &BigFloat) -> f64 {
        x.format(Radix::Dec, RM, &mut self.cc)
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(f64::NAN)
    }

    pub fn to_string(&mut self, x: &BigFloat, digits: usize) -> String {
        let v = x
            .format(Radix::Dec, RM, &mut self.cc)
            .unwrap_or_else(|_| "NaN".into());
        shorten(&v, digits)
    }
}

fn rational_to_float(x: &BigRational, p: usize, cc: &mut Consts) -> BigFloat {
    let n = BigFloat::parse(&x.numer().to_string(), Radix::Dec, p, RM, cc);
    let d = BigFloat::parse(&x.denom().to_string(), Radix::Dec, p, RM, cc);
    n.div(&d, p, RM)
}

/// Keeps `digits` significant mantissa digits of a decimal rendering.
fn shorten(s: &str, digits: usize) -> String {
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], &s[i..]),
        None => (s, ""),
    };
    let keep: String = {
        let mut count = 0;
        mant.chars()
            .take_while(|c| {
                if c.is_ascii_digit() {
                    count += 1;
                }
                count <= digits
            })
            .collect()
    };
    format!("{keep}{exp}")
}

/// One line of the analytic self-test.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelfTestCheck {
    pub check: String,
    pub expected: String,
    pub observed: String,
    pub abs_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Checks the values of `c` and `c(., xi_4)` at integers, the unitarity on
/// the imaginary axis and the functional equation.
pub fn numeric_selftest() -> Result<Vec<SelfTestCheck>> {
    let mut n = Numeric::new(320)?;
    let p = n.p;
    let mut out = Vec::new();
    let mut record = |n: &mut Numeric,
                      check: &str,
                      expected: BigFloat,
                      observed: BigFloat,
                      tol: f64|
     -> Result<()> {
        let err = observed.sub(&expected, p, RM).abs();
        let e = n.to_f64(&err);
        if e.is_nan() {
            return Err(Error::Precision(format!(
                "{check}: evaluation produced NaN"
            )));
        }
        out.push(SelfTestCheck {
            check: check.into(),
            expected: n.to_string(&expected, 30),
            observed: n.to_string(&observed, 30),
            abs_error: e,
            tolerance: tol,
            pass: e <= tol,
        });
        Ok(())
    };

    let pi = n.pi();
    let one = n.int(1);

    let z2 = n.zeta(&n.cx(2.0, 0.0)).re;
    let want = pi.mul(&pi, p, RM).div(&n.int(6), p, RM);
    record(&mut n, "zeta(2) = pi^2/6", want, z2, 1e-25)?;

    let l1 = n.l_chi4(&n.cx(1.0, 0.0)).re;
    let want = pi.div(&n.int(4), p, RM);
    record(&mut n, "L(1, xi4) = pi/4", want, l1, 1e-25)?;

    // c(0) as the symmetric limit of c(+-h)
    let h = 1e-15;
    let a = n.c(&n.cx(h, 0.0)).re;
    let b = n.c(&n.cx(-h, 0.0)).re;
    let avg = a.add(&b, p, RM).div(&n.int(2), p, RM);
    let minus_one = n.int(-1);
    record(&mut n, "c(0) = -1", minus_one, avg, 1e-20)?;

    // residue at 1: lim (s - 1) c(s), symmetrized
    let hb = n.real(h);
    let s_plus = n.from_real(n.int(1).add(&hb, p, RM));
    let s_minus = n.from_real(n.int(1).sub(&hb, p, RM));
    let a = n.c(&s_plus).re.mul(&hb, p, RM);
    let b = n.c(&s_minus).re.mul(&hb.neg(), p, RM);
    let res = a.add(&b, p, RM).div(&n.int(2), p, RM);
    let want = n.int(6).div(&pi, p, RM);
    record(&mut n, "res_{s=1} c(s) = 6/pi", want, res, 1e-20)?;

    // c'(-1) by a central difference
    let hb = n.real(1e-12);
    let s_plus = n.from_real(n.int(-1).add(&hb, p, RM));
    let s_minus = n.from_real(n.int(-1).sub(&hb, p, RM));
    let a = n.c(&s_plus).re;
    let b = n.c(&s_minus).re;
    let d = a.sub(&b, p, RM).div(&hb.mul(&n.int(2), p, RM), p, RM);
    let want = pi.div(&n.int(6), p, RM).neg();
    record(&mut n, "c'(-1) = -pi/6", want, d, 1e-10)?;

    let v = n.c_xi(&n.cx(0.0, 0.0)).re;
    record(&mut n, "c(0, xi4) = 1", one.clone(), v, 1e-20)?;

    for t in [0.5, 1.0, 3.0] {
        let v = n.c(&n.cx(0.0, t));
        let m = n.abs(&v);
        record(&mut n, &format!("|c({t}i)| = 1"), one.clone(), m, 1e-20)?;
        let v = n.c_xi(&n.cx(0.0, t));
        let m = n.abs(&v);
        record(
            &mut n,
            &format!("|c({t}i, xi4)| = 1"),
            one.clone(),
            m,
            1e-20,
        )?;
    }

    let s = 0.37;
    let a = n.c(&n.cx(s, 0.0));
    let b = n.c(&n.cx(-s, 0.0));
    let prod = n.mul(&a, &b).re;
    record(&mut n, "c(0.37) c(-0.37) = 1", one.clone(), prod, 1e-25)?;
    let a = n.c_xi(&n.cx(s, 0.0));
    let b = n.c_xi(&n.cx(-s, 0.0));
    let prod = n.mul(&a, &b).re;
    record(&mut n, "c(0.37, xi4) c(-0.37, xi4) = 1", one, prod, 1e-25)?;

    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli() {
        let b = bernoulli_even(3);
        assert_eq!(b[0], BigRational::new(1.into(), 6.into()));
        assert_eq!(b[1], BigRational::new((-1).into(), 30.into()));
        assert_eq!(b[2], BigRational::new(1.into(), 42.into()));
    }

    #[test]
    fn gamma_half() {
        let mut n = Numeric::new(256).unwrap();
        let g = n.gamma(&n.cx(0.5, 0.0)).re;
        let pi = n.pi();
        let want = pi.sqrt(256, RM);
        let e = n.to_f64(&g.sub(&want, 256, RM).abs());
        assert!(e < 1e-40, "{e}");
        let g = n.gamma(&n.cx(5.0, 0.0)).re;
        assert!(n.to_f64(&g.sub(&n.int(24), 256, RM).abs()) < 1e-40);
    }

    #[test]
    fn zeta_values() {
        let mut n = Numeric::new(256).unwrap();
        let z = n.zeta(&n.cx(-1.0, 0.0)).re;
        let want = n.int(-1).div(&n.int(12), 256, RM);
        assert!(n.to_f64(&z.sub(&want, 256, RM).abs()) < 1e-40);
        // odd character: L(0) = 1/2 and a trivial zero at -1
        let l = n.l_chi4(&n.cx(0.0, 0.0));
        assert!(n.to_f64(&l.re.sub(&n.real(0.5), 256, RM).abs()) < 1e-40);
        let l = n.l_chi4(&n.cx(-1.0, 0.0));
        assert!(n.to_f64(&l.re.abs()) < 1e-40);
    }

    #[test]
    fn selftest_passes() {
        let rep = numeric_selftest().unwrap();
        for c in &rep {
            assert!(c.pass, "{c:?}");
        }
        assert!(rep.len() >= 10);
    }
}
