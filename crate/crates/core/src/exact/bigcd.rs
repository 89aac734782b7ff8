//! Greatest common divisors in `Q[x][y]` by primitive pseudo-remainder sequences over `Z[x][y]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{BiPoly, Rational};

type ZPoly = Vec<BigInt>;
/// Coefficients in `y`, each a polynomial in `x`.
type YPoly = Vec<ZPoly>;

fn trim(p: &mut ZPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn ytrim(p: &mut YPoly) {
    while p.last().is_some_and(|c| c.is_empty()) {
        p.pop();
    }
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn zsub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let mut out: ZPoly = (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
        .collect();
    trim(&mut out);
    out
}

fn zcontent(p: &ZPoly) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divide out the integer content and make the leading coefficient positive.
fn zprimitive(mut p: ZPoly) -> ZPoly {
    trim(&mut p);
    let mut c = zcontent(&p);
    if c.is_zero() {
        return p;
    }
    if p.last().is_some_and(Signed::is_negative) {
        c = -c;
    }
    p.iter().map(|x| x / &c).collect()
}

/// Exact quotient in `Z[x]`; `b` must divide `a`.
fn zdiv_exact(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut r = a.clone();
    trim(&mut r);
    let db = b.len() - 1;
    if r.len() <= db {
        return Vec::new();
    }
    let lb = &b[db];
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db {
        let c = r.pop().expect("nonempty") / lb;
        let shift = r.len() - db;
        for (j, bj) in b[..db].iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        q[shift] = c;
        trim(&mut r);
    }
    trim(&mut q);
    q
}

fn zprem(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    trim(&mut r);
    while r.len() > db {
        let lr = r.pop().expect("nonempty");
        let shift = r.len() - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bj) in b[..db].iter().enumerate() {
            r[shift + j] -= &lr * bj;
        }
        trim(&mut r);
    }
    r
}

/// Primitive gcd in `Z[x]`, positive leading coefficient.
fn zgcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let (mut r0, mut r1) = (zprimitive(a.clone()), zprimitive(b.clone()));
    if r0.len() < r1.len() {
        std::mem::swap(&mut r0, &mut r1);
    }
    while !r1.is_empty() {
        let r = zprimitive(zprem(&r0, &r1));
        r0 = std::mem::replace(&mut r1, r);
    }
    r0
}

fn to_y(p: &BiPoly) -> YPoly {
    let terms = p.rational_terms().expect("bivariate gcd needs rational coefficients");
    let den = terms.iter().fold(BigInt::one(), |l, (_, c)| l.lcm(c.denom()));
    let mut out: YPoly = Vec::new();
    for ((a, b), c) in terms {
        let (a, b) = (a as usize, b as usize);
        if out.len() <= b {
            out.resize(b + 1, Vec::new());
        }
        if out[b].len() <= a {
            out[b].resize(a + 1, BigInt::zero());
        }
        out[b][a] = (c * Rational::from_integer(den.clone())).to_integer();
    }
    out
}

fn from_y(p: &YPoly, scale: &Rational) -> BiPoly {
    BiPoly::from_rationals(p.iter().enumerate().flat_map(|(b, row)| {
        row.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(a, c)| ((a as u32, b as u32), Rational::from_integer(c.clone()) * scale))
    }))
}

/// Content in `Z[x]` of a polynomial in `y`.
fn content(p: &YPoly) -> ZPoly {
    p.iter().filter(|c| !c.is_empty()).fold(Vec::new(), |acc, c| {
        if acc.is_empty() {
            zprimitive(c.clone())
        } else {
            zgcd(&acc, c)
        }
    })
}

fn primitive(p: &YPoly) -> YPoly {
    let c = content(p);
    let p: YPoly = if c.is_empty() {
        p.clone()
    } else {
        p.iter()
            .map(|x| if x.is_empty() { Vec::new() } else { zdiv_exact(x, &c) })
            .collect()
    };
    let k = p.iter().flatten().fold(BigInt::zero(), |g, c| g.gcd(c));
    if k.is_zero() || k.is_one() {
        return p;
    }
    p.iter().map(|row| row.iter().map(|c| c / &k).collect()).collect()
}

fn prem(a: &YPoly, b: &YPoly) -> YPoly {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    ytrim(&mut r);
    while r.len() > db {
        let lr = r.pop().expect("nonempty");
        let shift = r.len() - db;
        for c in r.iter_mut() {
            *c = zmul(c, lb);
        }
        for (j, bj) in b[..db].iter().enumerate() {
            r[shift + j] = zsub(&r[shift + j], &zmul(&lr, bj));
        }
        ytrim(&mut r);
    }
    r
}

/// Scale making the leading coefficient (highest `y`, then highest `x`) one.
fn monic_scale(p: &YPoly) -> Rational {
    let lead = p.last().and_then(|row| row.last()).cloned().unwrap_or_else(BigInt::one);
    Rational::new(BigInt::one(), lead)
}

fn ygcd(a: &YPoly, b: &YPoly) -> YPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    ytrim(&mut a);
    ytrim(&mut b);
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    let c = zgcd(&content(&a), &content(&b));
    let mut a = primitive(&a);
    let mut b = primitive(&b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let g = loop {
        if b.len() == 1 {
            break vec![vec![BigInt::one()]];
        }
        let r = prem(&a, &b);
        if r.is_empty() {
            break b;
        }
        a = std::mem::replace(&mut b, primitive(&r));
    };
    primitive(&g).iter().map(|row| zmul(row, &c)).collect()
}

/// Greatest common divisor over the rationals, normalized to leading coefficient one.
pub fn bipoly_gcd(a: &BiPoly, b: &BiPoly) -> BiPoly {
    let g = ygcd(&to_y(a), &to_y(b));
    from_y(&g, &monic_scale(&g))
}

/// Exact quotient `a / b` over the rationals, if `b` divides `a`.
pub fn bipoly_divide_exact(a: &BiPoly, b: &BiPoly) -> Option<BiPoly> {
    if b.is_zero() {
        return None;
    }
    let (ta, tb) = (a.rational_terms()?, b.rational_terms()?);
    let den = |t: &[((u32, u32), Rational)]| t.iter().fold(BigInt::one(), |l, (_, c)| l.lcm(c.denom()));
    let (den_a, den_b) = (den(&ta), den(&tb));
    let mut r = to_y(a);
    ytrim(&mut r);
    let b = to_y(b);
    // By Gauss's lemma the quotient by the primitive part of `b` is integral.
    let k = b.iter().flatten().fold(BigInt::zero(), |g, c| g.gcd(c));
    let b: YPoly = b.iter().map(|row| row.iter().map(|c| c / &k).collect()).collect();
    let db = b.len() - 1;
    let lb = &b[db];
    let mut q: YPoly = vec![Vec::new(); r.len().saturating_sub(db).max(1)];
    while !r.is_empty() {
        if r.len() <= db {
            return None;
        }
        let shift = r.len() - 1 - db;
        let c = zdiv_checked(r.last().expect("nonempty"), lb)?;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = zsub(&r[shift + j], &zmul(&c, bj));
        }
        q[shift] = c;
        ytrim(&mut r);
    }
    Some(from_y(&q, &Rational::new(den_b, den_a * k)))
}

/// Quotient in `Z[x]` when `b` divides `a` exactly there.
fn zdiv_checked(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let mut r = a.clone();
    trim(&mut r);
    let db = b.len() - 1;
    if r.len() <= db {
        return r.is_empty().then(Vec::new);
    }
    let lb = &b[db];
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db {
        let (c, rem) = r.pop().expect("nonempty").div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        let shift = r.len() - db;
        for (j, bj) in b[..db].iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        q[shift] = c;
        trim(&mut r);
    }
    if !r.is_empty() {
        return None;
    }
    trim(&mut q);
    Some(q)
}

fn repeated_part(f: &BiPoly) -> BiPoly {
    let g = bipoly_gcd(f, &f.derivative_second());
    bipoly_gcd(&g, &f.derivative_first())
}

/// True if no repeated factor of `f` passes through the origin.
pub fn is_locally_reduced(f: &BiPoly) -> bool {
    repeated_part(f).constant_term().is_some()
}

/// The product of the distinct irreducible factors of `f`.
pub fn reduced_part(f: &BiPoly) -> BiPoly {
    let g = repeated_part(f);
    bipoly_divide_exact(f, &g).expect("the repeated part divides f")
}
