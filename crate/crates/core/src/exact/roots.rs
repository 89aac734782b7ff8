use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Rational, Tower, UPoly};

/// Rational roots of a polynomial over the rationals, with the rootless monic cofactor.
#[derive(Clone, Debug)]
pub struct RationalRoots {
    pub roots: Vec<(Rational, u32)>,
    pub cofactor: UPoly,
}

const TRIAL_LIMIT: u64 = 1_000_000;

/// All rational roots with multiplicities, sorted ascending.
///
/// Panics if `g` has coefficients outside the rationals.
pub fn rational_roots(g: &UPoly) -> RationalRoots {
    let t = Tower::rational();
    let mut cur: Vec<Rational> = g.rational_coeffs().expect("rational_roots needs rational coefficients");
    let mut roots = Vec::new();
    if cur.is_empty() {
        return RationalRoots {
            roots,
            cofactor: UPoly::new(&t, Vec::new()),
        };
    }
    let zeros = cur.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        roots.push((Rational::zero(), zeros as u32));
        cur.drain(..zeros);
    }
    if cur.len() > 1 {
        let ints = integer_primitive(&cur);
        let lead = ints.last().expect("nonempty").abs().to_biguint().expect("abs");
        let tail = ints[0].abs().to_biguint().expect("abs");
        let ps = divisors(&tail);
        let qs = divisors(&lead);
        let mut cands: Vec<Rational> = Vec::new();
        for p in &ps {
            for q in &qs {
                let r = Rational::new(BigInt::from(p.clone()), BigInt::from(q.clone()));
                if r.denom() == &BigInt::from(q.clone()) {
                    cands.push(r.clone());
                    cands.push(-r);
                }
            }
        }
        cands.sort();
        cands.dedup();
        for r in cands {
            let mut mult = 0u32;
            while cur.len() > 1 {
                match synthetic_div(&cur, &r) {
                    Some(q) => {
                        cur = q;
                        mult += 1;
                    }
                    None => break,
                }
            }
            if mult > 0 {
                roots.push((r, mult));
            }
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    let lc = cur.last().expect("nonempty").clone();
    let monic: Vec<Rational> = cur.iter().map(|c| c / &lc).collect();
    RationalRoots {
        roots,
        cofactor: UPoly::from_rationals(&t, &monic),
    }
}

/// Quotient by `z - r` if `r` is a root.
fn synthetic_div(p: &[Rational], r: &Rational) -> Option<Vec<Rational>> {
    let n = p.len();
    let mut q = vec![Rational::zero(); n - 1];
    let mut acc = Rational::zero();
    for i in (0..n).rev() {
        acc = &acc * r + &p[i];
        if i > 0 {
            q[i - 1] = acc.clone();
        }
    }
    acc.is_zero().then_some(q)
}

fn integer_primitive(p: &[Rational]) -> Vec<BigInt> {
    let l = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .iter()
        .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

/// Positive divisors; prime factors above the trial bound are treated as prime.
fn divisors(n: &BigUint) -> Vec<BigUint> {
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    let mut m = n.clone();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT {
        let bp = BigUint::from(p);
        if &bp * &bp > m {
            break;
        }
        let mut e = 0;
        while (&m % &bp).is_zero() {
            m /= &bp;
            e += 1;
        }
        if e > 0 {
            factors.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > BigUint::one() {
        factors.push((m, 1));
    }
    let mut divs = vec![BigUint::one()];
    for (f, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut x = d.clone();
            for _ in 0..=e {
                next.push(x.clone());
                x *= &f;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}
