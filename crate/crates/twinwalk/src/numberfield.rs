//! Exact arithmetic behind the symbolic verdicts: characteristic polynomials
//! over big rationals, recognition of eigenvalues as integers or quadratic
//! integers (a + b√Δ)/2, 2-adic valuations, square-free parts, rationality
//! probing via continued fractions, and integer kernel lattices.
//!
//! The exact layer deliberately stops at rational roots, irreducible
//! quadratic factors, and irreducible even quartics t⁴ + pt² + q (whose
//! roots ±√((−p ± √(p²−4q))/2) show up for pendant twin pairs). Anything
//! past that is reported as unrecognized rather than approximated.

use num::bigint::BigInt;

use num::{Integer, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::graph::{format_rational, rat_to_f64, Hamiltonian, Rat};

#[derive(Debug, Error)]
pub enum NumberFieldError {
    #[error("2-adic valuation of zero is undefined")]
    ZeroValuation,
    #[error("characteristic polynomial requested on an inexact Hamiltonian")]
    InexactInput,
}

// ---------------------------------------------------------------------------
// Exact polynomials
// ---------------------------------------------------------------------------

/// Monic polynomial with big-rational coefficients; `coeffs[k]` multiplies t^k.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactPoly {
    coeffs: Vec<Rat>,
}

impl ExactPoly {
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let p = ExactPoly { coeffs };
        debug_assert!(p.coeffs.last().map(|c| c.is_one()).unwrap_or(false));
        p
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> &Rat {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rat_to_f64(c);
        }
        acc
    }

    /// Exact division by a monic divisor; returns the quotient only when the
    /// remainder is identically zero.
    pub fn div_exact(&self, divisor: &ExactPoly) -> Option<ExactPoly> {
        let n = self.degree();
        let d = divisor.degree();
        if d == 0 {
            return Some(self.clone());
        }
        if n < d {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); n - d + 1];
        for k in (0..=(n - d)).rev() {
            let lead = rem[k + d].clone();
            quot[k] = lead.clone();
            if lead.is_zero() {
                continue;
            }
            for j in 0..=d {
                let sub = lead.clone() * divisor.coeffs[j].clone();
                rem[k + j] -= sub;
            }
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(ExactPoly { coeffs: quot })
        } else {
            None
        }
    }

    fn linear(root: &Rat) -> ExactPoly {
        ExactPoly {
            coeffs: vec![-root.clone(), Rat::one()],
        }
    }

    fn quadratic(sum: &BigInt, prod: &BigInt) -> ExactPoly {
        ExactPoly {
            coeffs: vec![
                Rat::from_integer(prod.clone()),
                Rat::from_integer(-sum.clone()),
                Rat::one(),
            ],
        }
    }

    fn even_quartic(p: &BigInt, q: &BigInt) -> ExactPoly {
        ExactPoly {
            coeffs: vec![
                Rat::from_integer(q.clone()),
                Rat::zero(),
                Rat::from_integer(p.clone()),
                Rat::zero(),
                Rat::one(),
            ],
        }
    }
}

impl std::fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let show_coeff = !mag.is_one() || k == 0;
            if show_coeff {
                write!(f, "{}", format_rational(&mag))?;
            }
            if k > 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                if k == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{}", k)?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Exact monic characteristic polynomial of a rational symmetric matrix via
/// the Faddeev–LeVerrier recurrence.
pub fn char_poly(h: &Hamiltonian) -> Result<ExactPoly, NumberFieldError> {
    if !h.is_exact() {
        return Err(NumberFieldError::InexactInput);
    }
    let n = h.n();
    let mut coeffs = vec![Rat::zero(); n + 1];
    coeffs[n] = Rat::one();
    if n == 0 {
        return Ok(ExactPoly { coeffs });
    }
    // N starts as the identity; M_k = A·N, c_{n−k} = −tr(M_k)/k, N = M_k + c·I.
    let mut work: Vec<Rat> = (0..n * n)
        .map(|idx| {
            if idx / n == idx % n {
                Rat::one()
            } else {
                Rat::zero()
            }
        })
        .collect();
    for k in 1..=n {
        let mut m = vec![Rat::zero(); n * n];
        for i in 0..n {
            for l in 0..n {
                let a = h.entry(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let add = a.clone() * work[l * n + j].clone();
                    m[i * n + j] += add;
                }
            }
        }
        let mut trace = Rat::zero();
        for i in 0..n {
            trace += m[i * n + i].clone();
        }
        let c = -trace / Rat::from_integer(BigInt::from(k));
        coeffs[n - k] = c.clone();
        for i in 0..n {
            m[i * n + i] += c.clone();
        }
        work = m;
    }
    Ok(ExactPoly { coeffs })
}

// ---------------------------------------------------------------------------
// Quadratic values
// ---------------------------------------------------------------------------

/// Exact value (a + b√Δ)/2 with rational a, b and square-free Δ ≥ 1.
/// Δ = 1 encodes rational values (b is folded into a on construction).
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticValue {
    pub a: Rat,
    pub b: Rat,
    pub delta: u64,
}

impl QuadraticValue {
    pub fn new(a: Rat, b: Rat, delta: u64) -> Self {
        assert!(delta >= 1, "radicand must be positive");
        let (s, k) = squarefree_part(delta);
        let b = b * Rat::from_integer(BigInt::from(k));
        if s == 1 || b.is_zero() {
            QuadraticValue {
                a: a + b,
                b: Rat::zero(),
                delta: 1,
            }
        } else {
            QuadraticValue { a, b, delta: s }
        }
    }

    pub fn rational(r: Rat) -> Self {
        QuadraticValue {
            a: r * Rat::from_integer(BigInt::from(2)),
            b: Rat::zero(),
            delta: 1,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<Rat> {
        if self.is_rational() {
            Some(self.a.clone() / Rat::from_integer(BigInt::from(2)))
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        (rat_to_f64(&self.a) + rat_to_f64(&self.b) * (self.delta as f64).sqrt()) / 2.0
    }

    pub fn conjugate(&self) -> Self {
        QuadraticValue {
            a: self.a.clone(),
            b: -self.b.clone(),
            delta: self.delta,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Difference, defined when the radicands are compatible.
    pub fn sub(&self, other: &QuadraticValue) -> Option<QuadraticValue> {
        let delta = if self.is_rational() {
            other.delta
        } else if other.is_rational() || other.delta == self.delta {
            self.delta
        } else {
            return None;
        };
        Some(QuadraticValue {
            a: self.a.clone() - other.a.clone(),
            b: self.b.clone() - other.b.clone(),
            delta,
        })
    }

    pub fn scale(&self, c: &Rat) -> QuadraticValue {
        QuadraticValue {
            a: self.a.clone() * c.clone(),
            b: self.b.clone() * c.clone(),
            delta: self.delta,
        }
    }

    /// Exact quotient self/other inside ℚ(√Δ); `None` when the fields mix.
    pub fn div(&self, other: &QuadraticValue) -> Option<QuadraticValue> {
        if other.is_zero() {
            return None;
        }
        let delta = if other.is_rational() {
            self.delta
        } else if self.is_rational() || self.delta == other.delta {
            other.delta
        } else {
            return None;
        };
        let d = Rat::from_integer(BigInt::from(delta));
        // (a + b√Δ)/(a' + b'√Δ) multiplied by the conjugate of the denominator
        let den = other.a.clone() * other.a.clone() - other.b.clone() * other.b.clone() * d.clone();
        if den.is_zero() {
            return None;
        }
        let num_a = self.a.clone() * other.a.clone() - self.b.clone() * other.b.clone() * d;
        let num_b = self.b.clone() * other.a.clone() - self.a.clone() * other.b.clone();
        let two = Rat::from_integer(BigInt::from(2));
        Some(QuadraticValue {
            a: two.clone() * num_a / den.clone(),
            b: two * num_b / den,
            delta,
        })
    }

    /// Exact rational ratio self/other, when it exists.
    pub fn ratio_to(&self, other: &QuadraticValue) -> Option<Rat> {
        self.div(other).and_then(|q| q.as_rational())
    }
}

impl std::fmt::Display for QuadraticValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let two = Rat::from_integer(BigInt::from(2));
        if self.is_rational() {
            return write!(f, "{}", format_rational(&(self.a.clone() / two)));
        }
        let ra = self.a.clone() / two.clone();
        let rb = self.b.clone() / two;
        let root = format!("sqrt({})", self.delta);
        let bpart = if rb.is_one() {
            root
        } else if rb == -Rat::one() {
            format!("-{root}")
        } else if rb.denom().is_one() {
            format!("{}*{}", rb.numer(), root)
        } else {
            format!("({})*{}", format_rational(&rb), root)
        };
        if ra.is_zero() {
            write!(f, "{}", bpart)
        } else if rb.is_negative() {
            write!(f, "{}{}", format_rational(&ra), bpart)
        } else {
            write!(f, "{}+{}", format_rational(&ra), bpart)
        }
    }
}

// ---------------------------------------------------------------------------
// Elementary number theory
// ---------------------------------------------------------------------------

/// ν₂(b): exponent of the largest power of two dividing b.
pub fn nu2(b: &BigInt) -> Result<u32, NumberFieldError> {
    if b.is_zero() {
        return Err(NumberFieldError::ZeroValuation);
    }
    Ok(b.trailing_zeros().unwrap_or(0) as u32)
}

/// Square-free decomposition n = k²·s with s square-free; returns (s, k).
pub fn squarefree_part(n: u64) -> (u64, u64) {
    assert!(n >= 1);
    let mut s = 1u64;
    let mut k = 1u64;
    let mut rem = n;
    let mut p = 2u64;
    while p * p <= rem {
        if rem % p == 0 {
            let mut e = 0u32;
            while rem % p == 0 {
                rem /= p;
                e += 1;
            }
            for _ in 0..(e / 2) {
                k *= p;
            }
            if e % 2 == 1 {
                s *= p;
            }
        }
        p += 1;
    }
    (s * rem, k)
}

/// Continued-fraction rationality probe for x/y: the closest convergent p/q
/// with q ≤ qmax and |x/y − p/q| < 1e−9, provided the expansion actually
/// terminates (a huge partial quotient). Quadratic irrationals have periodic
/// expansions and never terminate, so they come back as `None`; `None` is
/// inconclusive evidence, never a proof of irrationality.
pub fn is_rational_ratio(x: f64, y: f64, qmax: u64) -> Option<(i64, i64)> {
    if y == 0.0 || !x.is_finite() || !y.is_finite() {
        return None;
    }
    let r = x / y;
    let tol = 1e-9;
    let blowup = 1e8;
    let mut h_prev: i128 = 1;
    let mut h: i128 = r.floor() as i128;
    let mut k_prev: i128 = 0;
    let mut k: i128 = 1;
    let mut frac = r - r.floor();
    for _ in 0..64 {
        let approx = h as f64 / k as f64;
        let exact_enough = frac.abs() < 1e-13 * (1.0 + r.abs());
        if exact_enough {
            if (r - approx).abs() < tol && k as u64 <= qmax {
                return Some((h as i64, k as i64));
            }
            return None;
        }
        let next = 1.0 / frac;
        if next > blowup {
            // the expansion effectively terminated at the current convergent
            if (r - approx).abs() < tol && k as u64 <= qmax {
                return Some((h as i64, k as i64));
            }
            return None;
        }
        let a = next.floor();
        frac = next - a;
        let a = a as i128;
        let h_next = a * h + h_prev;
        let k_next = a * k + k_prev;
        if k_next as u64 > qmax || k_next > i64::MAX as i128 || h_next.abs() > i64::MAX as i128 {
            return None;
        }
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
    }
    None
}

// ---------------------------------------------------------------------------
// Characteristic polynomial factor extraction
// ---------------------------------------------------------------------------

/// One root of an irreducible even quartic t⁴ + pt² + q: the value
/// outer·√((−p + inner·√(p²−4q))/2) with signs in {−1,+1}.
#[derive(Clone, Debug, PartialEq)]
pub struct EvenQuarticRoot {
    pub p: BigInt,
    pub q: BigInt,
    pub outer_sign: i8,
    pub inner_sign: i8,
}

impl EvenQuarticRoot {
    pub fn to_f64(&self) -> f64 {
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        let disc = (p * p - 4.0 * q).sqrt();
        let y = (-p + (self.inner_sign as f64) * disc) / 2.0;
        (self.outer_sign as f64) * y.sqrt()
    }
}

impl std::fmt::Display for EvenQuarticRoot {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let outer = if self.outer_sign < 0 { "-" } else { "" };
        let inner = if self.inner_sign < 0 { "-" } else { "+" };
        let disc = &self.p * &self.p - BigInt::from(4) * &self.q;
        write!(
            f,
            "{}sqrt(({}{}sqrt({}))/2)",
            outer,
            -self.p.clone(),
            inner,
            disc
        )
    }
}

/// An eigenvalue recognized exactly: either a quadratic integer value or a
/// root of an irreducible even quartic.
#[derive(Clone, Debug, PartialEq)]
pub enum ExactValue {
    Quadratic(QuadraticValue),
    Quartic(EvenQuarticRoot),
}

impl ExactValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            ExactValue::Quadratic(q) => q.to_f64(),
            ExactValue::Quartic(r) => r.to_f64(),
        }
    }

    pub fn as_quadratic(&self) -> Option<&QuadraticValue> {
        match self {
            ExactValue::Quadratic(q) => Some(q),
            ExactValue::Quartic(_) => None,
        }
    }
}

impl std::fmt::Display for ExactValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExactValue::Quadratic(q) => write!(f, "{q}"),
            ExactValue::Quartic(r) => write!(f, "{r}"),
        }
    }
}

/// Factorization of a characteristic polynomial into the supported shapes.
#[derive(Clone, Debug, Default)]
pub struct CharFactors {
    pub rational_roots: Vec<(Rat, usize)>,
    /// (S, P, multiplicity) for irreducible t² − S·t + P.
    pub quadratics: Vec<(BigInt, BigInt, usize)>,
    /// (p, q, multiplicity) for irreducible even t⁴ + p·t² + q.
    pub even_quartics: Vec<(BigInt, BigInt, usize)>,
    /// Degree left unfactored (0 when fully factored).
    pub residual_degree: usize,
}

fn rational_candidate(x: f64) -> Option<Rat> {
    let r = x.round();
    if (x - r).abs() < 1e-7 && r.abs() < 9e15 {
        return Some(Rat::from_integer(BigInt::from(r as i64)));
    }
    is_rational_ratio(x, 1.0, 1_000_000)
        .map(|(p, q)| Rat::new(BigInt::from(p), BigInt::from(q)))
}

fn integer_candidate(x: f64) -> Option<BigInt> {
    let r = x.round();
    if (x - r).abs() < 1e-6 && r.abs() < 9e15 {
        Some(BigInt::from(r as i64))
    } else {
        None
    }
}

/// Factor `poly` into rational roots, irreducible integer quadratics, and
/// irreducible even quartics, guided by numeric root hints. Hints should
/// cover the distinct real roots; whatever cannot be matched stays in
/// `residual_degree`.
pub fn factor_char_poly(poly: &ExactPoly, hints: &[f64]) -> CharFactors {
    let mut out = CharFactors::default();
    let mut rem = poly.clone();

    let take_root = |rem: &mut ExactPoly, cand: Rat, out: &mut CharFactors| {
        let lin = ExactPoly::linear(&cand);
        let mut mult = 0usize;
        while let Some(q) = rem.div_exact(&lin) {
            *rem = q;
            mult += 1;
        }
        if mult > 0 && !out.rational_roots.iter().any(|(r, _)| *r == cand) {
            out.rational_roots.push((cand, mult));
        }
    };

    // the zero root needs no hint
    take_root(&mut rem, Rat::zero(), &mut out);

    // integer roots: sweep candidates inside the Fujiwara root bound, which
    // for a monic polynomial stays within a factor 2 of the largest root
    if rem.degree() > 0 && rem.is_integral() {
        let n = rem.degree();
        let mut bound = 0.0f64;
        for k in 0..n {
            let c = rat_to_f64(rem.coeff(k)).abs();
            if c > 0.0 {
                bound = bound.max(c.powf(1.0 / (n - k) as f64));
            }
        }
        let b = (2.0 * bound).ceil().min(10_000.0) as i64 + 1;
        for r in -b..=b {
            if rem.degree() == 0 {
                break;
            }
            if r == 0 {
                continue;
            }
            let cand = Rat::from_integer(BigInt::from(r));
            if rem.eval_rat(&cand).is_zero() {
                take_root(&mut rem, cand, &mut out);
            }
        }
    }

    // non-integer rational roots, guided by hints
    for &hint in hints {
        if rem.degree() == 0 {
            break;
        }
        if let Some(cand) = rational_candidate(hint) {
            if (rat_to_f64(&cand) - hint).abs() > 1e-6 {
                continue;
            }
            take_root(&mut rem, cand, &mut out);
        }
    }

    // integer quadratic factors t² − St + P: for each hinted root λ the
    // conjugate is S − λ with S an integer inside twice the root bound, so
    // sweep S and propose P = λ(S − λ)
    if rem.degree() >= 2 && rem.is_integral() {
        let n = rem.degree();
        let mut bound = 1.0f64;
        for k in 0..n {
            let c = rat_to_f64(rem.coeff(k)).abs();
            if c > 0.0 {
                bound = bound.max(c.powf(1.0 / (n - k) as f64));
            }
        }
        let smax = (4.0 * bound).ceil().min(1000.0) as i64;
        for &lam in hints {
            if rem.degree() < 2 {
                break;
            }
            for s_int in -smax..=smax {
                let p = lam * (s_int as f64 - lam);
                let Some(pi) = integer_candidate(p) else {
                    continue;
                };
                let si = BigInt::from(s_int);
                let disc = &si * &si - BigInt::from(4) * &pi;
                if disc.is_negative() || disc.is_zero() {
                    continue;
                }
                if out.quadratics.iter().any(|(a, b, _)| *a == si && *b == pi) {
                    continue;
                }
                let quad = ExactPoly::quadratic(&si, &pi);
                let mut mult = 0usize;
                while let Some(q) = rem.div_exact(&quad) {
                    rem = q;
                    mult += 1;
                }
                if mult > 0 {
                    out.quadratics.push((si, pi, mult));
                }
            }
        }
    }

    // leftover even quartic t⁴ + p t² + q: confirmed irreducible against its
    // own root pairings before being accepted as an exact factor
    if rem.degree() == 4
        && rem.is_integral()
        && rem.coeff(1).is_zero()
        && rem.coeff(3).is_zero()
    {
        let p = rem.coeff(2).to_integer();
        let q = rem.coeff(0).to_integer();
        if is_irreducible_even_quartic(&p, &q) {
            let quart = ExactPoly::even_quartic(&p, &q);
            let mut mult = 0usize;
            while let Some(qq) = rem.div_exact(&quart) {
                rem = qq;
                mult += 1;
            }
            if mult > 0 {
                out.even_quartics.push((p, q, mult));
            }
        }
    }

    out.residual_degree = rem.degree();
    out
}

/// Irreducibility of t⁴ + pt² + q over ℚ, assuming four distinct real
/// irrational roots ±s, ±r. The only possible monic integer factorizations
/// pair actual roots, so we test the three pairings exactly.
fn is_irreducible_even_quartic(p: &BigInt, q: &BigInt) -> bool {
    let pf = p.to_f64().unwrap_or(f64::NAN);
    let qf = q.to_f64().unwrap_or(f64::NAN);
    let disc = pf * pf - 4.0 * qf;
    if !(disc > 0.0) || q.is_zero() {
        return false;
    }
    let y1 = (-pf + disc.sqrt()) / 2.0;
    let y2 = (-pf - disc.sqrt()) / 2.0;
    if !(y1 > 0.0 && y2 > 0.0) {
        return false;
    }
    let (s, r) = (y1.sqrt(), y2.sqrt());
    let quartic = ExactPoly::even_quartic(p, q);
    let pairings = [
        (s + (-s), s * (-s)),
        (r + (-r), r * (-r)),
        (s + r, s * r),
        (s - r, -s * r),
    ];
    for (sum, prod) in pairings {
        let (Some(si), Some(pi)) = (integer_candidate(sum), integer_candidate(prod)) else {
            continue;
        };
        if quartic.div_exact(&ExactPoly::quadratic(&si, &pi)).is_some() {
            return false;
        }
    }
    // rational roots would have been integer; test the four numeric roots
    for root in [s, -s, r, -r] {
        if let Some(c) = integer_candidate(root) {
            if quartic.eval_rat(&Rat::from_integer(c)).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Result of matching numeric support values against exact factors.
#[derive(Clone, Debug, PartialEq)]
pub enum SupportRecognition {
    /// One quadratic value per input, in input order.
    Exact(Vec<QuadraticValue>),
    Unrecognized { reason: String },
}

/// Match each numeric support eigenvalue to an integer root or a root of an
/// irreducible integer quadratic factor of `poly`. Values that sit inside
/// higher-degree irreducible factors make the whole support unrecognized;
/// the quadratic-form machinery is then inapplicable and honesty beats
/// approximation.
pub fn recognize_support(poly: &ExactPoly, support: &[f64]) -> SupportRecognition {
    if !poly.is_integral() {
        return SupportRecognition::Unrecognized {
            reason: "non-integral characteristic polynomial".into(),
        };
    }
    match recognize_values(poly, support) {
        Ok(vals) => {
            let mut quads = Vec::with_capacity(vals.len());
            for v in vals {
                match v {
                    ExactValue::Quadratic(q) => quads.push(q),
                    ExactValue::Quartic(_) => {
                        return SupportRecognition::Unrecognized {
                            reason: "support meets an irreducible quartic factor".into(),
                        }
                    }
                }
            }
            SupportRecognition::Exact(quads)
        }
        Err(reason) => SupportRecognition::Unrecognized { reason },
    }
}

/// Shared matcher: map each value to an exact root of `poly` within 1e−7,
/// requiring a unique match per value. Accepts quadratic and even-quartic
/// roots.
pub fn recognize_values(poly: &ExactPoly, values: &[f64]) -> Result<Vec<ExactValue>, String> {
    let factors = factor_char_poly(poly, values);
    let mut exact_roots: Vec<ExactValue> = Vec::new();
    for (r, _) in &factors.rational_roots {
        exact_roots.push(ExactValue::Quadratic(QuadraticValue::rational(r.clone())));
    }
    for (s, p, _) in &factors.quadratics {
        let disc = s * s - BigInt::from(4) * p;
        let d_u64 = match disc.to_u64() {
            Some(d) => d,
            None => return Err("quadratic discriminant exceeds supported range".into()),
        };
        let (delta, k) = squarefree_part(d_u64);
        for sign in [1i64, -1i64] {
            exact_roots.push(ExactValue::Quadratic(QuadraticValue::new(
                Rat::from_integer(s.clone()),
                Rat::from_integer(BigInt::from(sign * k as i64)),
                delta,
            )));
        }
    }
    for (p, q, _) in &factors.even_quartics {
        for outer in [1i8, -1i8] {
            for inner in [1i8, -1i8] {
                exact_roots.push(ExactValue::Quartic(EvenQuarticRoot {
                    p: p.clone(),
                    q: q.clone(),
                    outer_sign: outer,
                    inner_sign: inner,
                }));
            }
        }
    }
    let mut out = Vec::with_capacity(values.len());
    for &v in values {
        let mut dists: Vec<(f64, usize)> = exact_roots
            .iter()
            .enumerate()
            .map(|(i, root)| ((root.to_f64() - v).abs(), i))
            .collect();
        dists.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        match dists.first() {
            Some(&(d, i)) if d < 1e-7 => {
                if dists.len() > 1 && dists[1].0 < 1e-7 {
                    return Err(format!("ambiguous match for eigenvalue {v}"));
                }
                out.push(exact_roots[i].clone());
            }
            _ => return Err(format!("eigenvalue {v} not matched by any exact factor")),
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Integer kernel lattices
// ---------------------------------------------------------------------------

/// Basis of the integer kernel {x ∈ ℤⁿ : A·x = 0} of an integer matrix,
/// via Hermite-style row reduction of Aᵀ with a recorded unimodular
/// transform. The returned vectors generate the full kernel lattice.
pub fn integer_kernel(a: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    if n == 0 {
        return Vec::new();
    }
    if m == 0 {
        return (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect();
    }
    // h = Aᵀ (n×m), u = Iₙ; row ops keep u·Aᵀ = h.
    let mut h: Vec<Vec<BigInt>> = (0..n).map(|i| (0..m).map(|j| a[j][i].clone()).collect()).collect();
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let mut pivot_row = 0usize;
    for col in 0..m {
        // eliminate below pivot_row in this column by gcd steps
        loop {
            let mut nonzero: Vec<usize> = (pivot_row..n).filter(|&r| !h[r][col].is_zero()).collect();
            if nonzero.len() <= 1 {
                break;
            }
            // pick row with smallest |entry| as the reducer
            nonzero.sort_by_key(|&r| h[r][col].abs());
            let r0 = nonzero[0];
            for &r in &nonzero[1..] {
                let q = h[r][col].clone() / h[r0][col].clone();
                if !q.is_zero() {
                    for c in 0..m {
                        let sub = q.clone() * h[r0][c].clone();
                        h[r][c] -= sub;
                    }
                    for c in 0..n {
                        let sub = q.clone() * u[r0][c].clone();
                        u[r][c] -= sub;
                    }
                }
            }
        }
        if let Some(r) = (pivot_row..n).find(|&r| !h[r][col].is_zero()) {
            h.swap(pivot_row, r);
            u.swap(pivot_row, r);
            pivot_row += 1;
        }
        if pivot_row == n {
            break;
        }
    }
    let mut basis = Vec::new();
    for r in 0..n {
        if h[r].iter().all(|x| x.is_zero()) {
            basis.push(u[r].clone());
        }
    }
    basis
}

/// Clear denominators of a rational matrix row-wise, yielding integer rows
/// with the same kernel.
pub fn clear_denominators(rows: &[Vec<Rat>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let mut l = BigInt::one();
            for x in row {
                l = l.lcm(x.denom());
            }
            row.iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect()
        })
        .collect()
}
