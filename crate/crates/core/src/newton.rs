//! Newton polygons: faces, weight vectors, regular fan completion, and cone decomposition.

use num_integer::Integer;
use serde::Serialize;

use crate::exact::{BiPoly, ExactError};

/// A primitive weight vector `P = (a, b)`, pairing with an exponent `(α, β)` as `aα + bβ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WeightVector {
    pub a: u64,
    pub b: u64,
}

impl WeightVector {
    /// Returns `None` unless `a, b > 0` and `gcd(a, b) = 1`.
    pub fn new(a: u64, b: u64) -> Option<Self> {
        (a > 0 && b > 0 && a.gcd(&b) == 1).then_some(WeightVector { a, b })
    }

    pub fn pair(&self, (alpha, beta): (u32, u32)) -> u64 {
        self.a * alpha as u64 + self.b * beta as u64
    }

    /// Weighted order `min aα + bβ` over the support of `f`.
    pub fn order(&self, f: &BiPoly) -> Option<u64> {
        f.support().map(|e| self.pair(e)).min()
    }

    pub fn det(&self, o: &WeightVector) -> i128 {
        self.a as i128 * o.b as i128 - self.b as i128 * o.a as i128
    }
}

impl std::fmt::Display for WeightVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// A compact face of the Newton polygon.
#[derive(Clone, Debug, PartialEq)]
pub struct Face {
    pub normal: WeightVector,
    /// Endpoint on the side of the second axis (larger second exponent).
    pub left: (u32, u32),
    /// Endpoint on the side of the first axis.
    pub right: (u32, u32),
    pub face_function: BiPoly,
    pub degree: u64,
}

impl Face {
    /// Lattice length of the face: the number of primitive segments.
    pub fn lattice_length(&self) -> u64 {
        let da = (self.right.0 - self.left.0) as u64;
        let db = (self.left.1 - self.right.1) as u64;
        da.gcd(&db)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum NewtonError {
    #[error("the polynomial does not vanish at the origin")]
    NotVanishing,
    #[error("the polynomial is zero")]
    Zero,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// The lower vertices of the Newton polygon, from the second axis towards the first.
fn hull_vertices(points: &[(u32, u32)]) -> Vec<(u32, u32)> {
    let mut start = points[0];
    for &p in points {
        if p.0 < start.0 || (p.0 == start.0 && p.1 < start.1) {
            start = p;
        }
    }
    let mut verts = vec![start];
    let mut cur = start;
    loop {
        // Next vertex: among points strictly below, the smallest horizontal run per unit drop;
        // ties go to the farthest point so faces are maximal.
        let mut best: Option<(u32, u32)> = None;
        for &p in points {
            if p.1 >= cur.1 || p.0 < cur.0 {
                continue;
            }
            best = match best {
                None => Some(p),
                Some(b) => {
                    let (run_p, drop_p) = ((p.0 - cur.0) as u64, (cur.1 - p.1) as u64);
                    let (run_b, drop_b) = ((b.0 - cur.0) as u64, (cur.1 - b.1) as u64);
                    let lhs = run_p * drop_b;
                    let rhs = run_b * drop_p;
                    if lhs < rhs || (lhs == rhs && p.1 < b.1) {
                        Some(p)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        match best {
            Some(b) => {
                verts.push(b);
                cur = b;
            }
            None => break,
        }
    }
    verts
}

/// The compact faces of the Newton polygon of `f`, ordered from the second axis to the first.
///
/// Coefficients at hull vertices are tested for invertibility, so a zero divisor in the
/// coefficient tower surfaces as a split request.
pub fn newton_faces(f: &BiPoly) -> Result<Vec<Face>, NewtonError> {
    if f.is_zero() {
        return Err(NewtonError::Zero);
    }
    if f.constant_term().is_some() {
        return Err(NewtonError::NotVanishing);
    }
    let t = f.tower();
    let d = t.depth();
    let points: Vec<(u32, u32)> = f.support().collect();
    let verts = hull_vertices(&points);
    for v in &verts {
        t.inv(d, f.coeff_elem(*v).expect("vertex in support"))?;
    }
    let mut faces = Vec::with_capacity(verts.len().saturating_sub(1));
    for w in verts.windows(2) {
        let (l, r) = (w[0], w[1]);
        let run = (r.0 - l.0) as u64;
        let drop = (l.1 - r.1) as u64;
        let g = run.gcd(&drop);
        let normal = WeightVector {
            a: drop / g,
            b: run / g,
        };
        let degree = normal.pair(l);
        let face_function = BiPoly::from_terms(
            t,
            f.terms()
                .filter(|(e, _)| normal.pair(**e) == degree)
                .map(|(e, c)| (*e, c.clone())),
        );
        faces.push(Face {
            normal,
            left: l,
            right: r,
            face_function,
            degree,
        });
    }
    Ok(faces)
}

/// Rays of a regular refinement of the first quadrant, plus the chosen end rays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completion {
    /// Minimal regular refinement strictly between `(1,0)` and `(0,1)`, containing all inputs.
    pub rays: Vec<WeightVector>,
    /// Ray adjacent to `(1,0)` in the vertex cone of the left vertex.
    pub q_left: WeightVector,
    /// Ray adjacent to `(0,1)` in the vertex cone of the right vertex.
    pub q_right: WeightVector,
}

/// Insert the minimal regular rays between two primitive rays with `det(u, v) > 0`.
fn refine_between(u: (i128, i128), v: (i128, i128), out: &mut Vec<(i128, i128)>) {
    let mut cur = u;
    loop {
        let d = cur.0 * v.1 - cur.1 * v.0;
        if d <= 1 {
            return;
        }
        // Lattice points with det(cur, w) = 1 form the line w0 + t·cur.
        let (g, x, y) = ext_gcd(cur.0, cur.1);
        debug_assert_eq!(g, 1);
        let w0 = (-y, x);
        let base = w0.0 * v.1 - w0.1 * v.0;
        let t = (-base).div_euclid(d) + if (-base).rem_euclid(d) == 0 { 0 } else { 1 };
        let w = (w0.0 + t * cur.0, w0.1 + t * cur.1);
        out.push(w);
        cur = w;
    }
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - (a.div_euclid(b)) * y)
    }
}

/// Minimal regular refinement of the fan given by the face normals.
pub fn unimodular_complete(faces: &[WeightVector]) -> Completion {
    let to = |w: &WeightVector| (w.a as i128, w.b as i128);
    let mut seq: Vec<(i128, i128)> = Vec::new();
    let mut prev = (1i128, 0i128);
    for w in faces {
        refine_between(prev, to(w), &mut seq);
        seq.push(to(w));
        prev = to(w);
    }
    refine_between(prev, (0, 1), &mut seq);
    let rays: Vec<WeightVector> = seq
        .iter()
        .map(|&(a, b)| WeightVector {
            a: a as u64,
            b: b as u64,
        })
        .collect();
    let first = *rays.first().expect("at least one ray");
    let last = *rays.last().expect("at least one ray");
    let q_left = if faces.first() == Some(&first) {
        WeightVector { a: first.a + 1, b: 1 }
    } else {
        first
    };
    let q_right = if faces.last() == Some(&last) {
        WeightVector { a: 1, b: last.b + 1 }
    } else {
        last
    };
    Completion { rays, q_left, q_right }
}

/// Which open cone of the dual fan a weight direction falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ConeKind {
    /// The ray through the normal of face `i` (0-based).
    Face(usize),
    /// The open region selecting vertex `i`: vertex 0 is the left endpoint of face 0 and
    /// vertex `i` the right endpoint of face `i - 1`.
    Vertex(usize),
}

/// The dual fan of a Newton polygon with its piecewise linear form `ℓ`.
#[derive(Clone, Debug)]
pub struct ConeDecomposition {
    normals: Vec<WeightVector>,
    vertices: Vec<(u32, u32)>,
}

pub fn cone_decomposition(faces: &[Face]) -> ConeDecomposition {
    let mut vertices: Vec<(u32, u32)> = faces.iter().map(|f| f.left).collect();
    if let Some(last) = faces.last() {
        vertices.push(last.right);
    }
    ConeDecomposition {
        normals: faces.iter().map(|f| f.normal).collect(),
        vertices,
    }
}

impl ConeDecomposition {
    pub fn vertices(&self) -> &[(u32, u32)] {
        &self.vertices
    }

    /// Classify `Ω = (p, q)` by comparing `q/p` with the face slopes `b/a`.
    pub fn classify(&self, p: u64, q: u64) -> ConeKind {
        for (i, n) in self.normals.iter().enumerate() {
            let lhs = q as u128 * n.a as u128;
            let rhs = p as u128 * n.b as u128;
            if lhs == rhs {
                return ConeKind::Face(i);
            }
            if lhs < rhs {
                return ConeKind::Vertex(i);
            }
        }
        ConeKind::Vertex(self.normals.len())
    }

    /// `ℓ(Ω)` evaluated through the classification.
    pub fn ell(&self, p: u64, q: u64) -> u64 {
        let v = match self.classify(p, q) {
            ConeKind::Face(i) | ConeKind::Vertex(i) => self.vertices[i],
        };
        p * v.0 as u64 + q * v.1 as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(terms: &[((u32, u32), i64)]) -> BiPoly {
        BiPoly::from_ints(terms)
    }

    fn wv(a: u64, b: u64) -> WeightVector {
        WeightVector::new(a, b).unwrap()
    }

    #[test]
    fn cusp_face() {
        let f = poly(&[((0, 2), 1), ((3, 0), 1)]);
        let faces = newton_faces(&f).unwrap();
        assert_eq!(faces.len(), 1);
        assert_eq!(faces[0].normal, wv(2, 3));
        assert_eq!(faces[0].degree, 6);
        assert_eq!(faces[0].face_function, f);
    }

    #[test]
    fn two_pair_face_drops_interior_point() {
        let f = poly(&[((0, 4), 1), ((3, 2), -2), ((5, 1), -1), ((6, 0), 1)]);
        let faces = newton_faces(&f).unwrap();
        assert_eq!(faces.len(), 1);
        assert_eq!(faces[0].normal, wv(2, 3));
        assert_eq!(faces[0].degree, 12);
        let expected = poly(&[((0, 4), 1), ((3, 2), -2), ((6, 0), 1)]);
        assert_eq!(faces[0].face_function, expected);
        assert_eq!(faces[0].lattice_length(), 2);
    }

    #[test]
    fn two_faces() {
        let f = poly(&[((0, 3), 1), ((1, 2), 1), ((3, 1), 1), ((4, 0), 1)]);
        let faces = newton_faces(&f).unwrap();
        assert_eq!(faces.len(), 2);
        assert_eq!(faces[0].normal, wv(1, 1));
        assert_eq!(faces[0].face_function, poly(&[((0, 3), 1), ((1, 2), 1)]));
        assert_eq!(faces[1].normal, wv(2, 3));
        assert_eq!(faces[1].face_function, poly(&[((1, 2), 1), ((4, 0), 1)]));
        assert_eq!(faces[0].normal.det(&faces[1].normal), 1);
    }

    #[test]
    fn constant_term_rejected() {
        let f = poly(&[((0, 0), 1), ((0, 2), 1)]);
        assert_eq!(newton_faces(&f), Err(NewtonError::NotVanishing));
    }

    #[test]
    fn completion_examples() {
        let c = unimodular_complete(&[wv(2, 3)]);
        assert_eq!(c.rays, vec![wv(1, 1), wv(2, 3), wv(1, 2)]);
        assert_eq!((c.q_left, c.q_right), (wv(1, 1), wv(1, 2)));
        let c = unimodular_complete(&[wv(1, 1)]);
        assert_eq!(c.rays, vec![wv(1, 1)]);
        assert_eq!((c.q_left, c.q_right), (wv(2, 1), wv(1, 2)));
        let c = unimodular_complete(&[wv(1, 2)]);
        assert_eq!(c.q_right, wv(1, 3));
        assert_eq!(c.rays, vec![wv(1, 1), wv(1, 2)]);
    }

    #[test]
    fn cusp_cones() {
        let f = poly(&[((0, 2), 1), ((3, 0), 1)]);
        let cd = cone_decomposition(&newton_faces(&f).unwrap());
        assert_eq!(cd.classify(2, 3), ConeKind::Face(0));
        assert_eq!(cd.ell(2, 3), 6);
        assert_eq!(cd.classify(1, 1), ConeKind::Vertex(0));
        assert_eq!(cd.ell(1, 1), 2);
        // (3,2) pairs to 4 at y^2 and 9 at x^3: the left vertex cone.
        assert_eq!(cd.classify(3, 2), ConeKind::Vertex(0));
        assert_eq!(cd.ell(3, 2), 4);
        assert_eq!(cd.classify(1, 2), ConeKind::Vertex(1));
        assert_eq!(cd.ell(1, 2), 3);
    }

    fn support_strategy() -> impl Strategy<Value = Vec<((u32, u32), i64)>> {
        (
            1u32..7,
            1u32..7,
            prop::collection::vec(((0u32..7, 0u32..7), 1i64..4), 0..8),
        )
            .prop_map(|(ya, xb, extra)| {
                let mut t = vec![((0, ya), 1), ((xb, 0), 1)];
                t.extend(extra.into_iter().filter(|((a, b), _)| a + b > 0));
                t
            })
    }

    proptest! {
        #[test]
        fn hull_matches_brute_force(terms in support_strategy()) {
            let f = poly(&terms);
            let faces = newton_faces(&f).unwrap();
            let pts: Vec<(u32, u32)> = f.support().collect();
            for face in &faces {
                let n = face.normal;
                // No support point strictly below the face line, and the face points are exactly those on it.
                for p in &pts {
                    prop_assert!(n.pair(*p) >= face.degree);
                    let on = n.pair(*p) == face.degree;
                    prop_assert_eq!(on, face.face_function.coeff_elem(*p).is_some());
                }
            }
            for w in faces.windows(2) {
                prop_assert!(w[0].normal.det(&w[1].normal) >= 1);
            }
        }

        #[test]
        fn ell_matches_direct_minimum(terms in support_strategy(), omegas in prop::collection::vec((1u64..40, 1u64..40), 1000)) {
            let f = poly(&terms);
            let cd = cone_decomposition(&newton_faces(&f).unwrap());
            for (p, q) in omegas {
                let direct = f.support().map(|(a, b)| p * a as u64 + q * b as u64).min().unwrap();
                prop_assert_eq!(cd.ell(p, q), direct);
            }
        }

        #[test]
        fn completion_is_regular(terms in support_strategy()) {
            let f = poly(&terms);
            let normals: Vec<WeightVector> = newton_faces(&f).unwrap().iter().map(|x| x.normal).collect();
            let c = unimodular_complete(&normals);
            let mut chain = vec![(1i128, 0i128)];
            chain.extend(c.rays.iter().map(|w| (w.a as i128, w.b as i128)));
            chain.push((0, 1));
            for w in chain.windows(2) {
                prop_assert_eq!(w[0].0 * w[1].1 - w[0].1 * w[1].0, 1);
            }
            for n in &normals {
                prop_assert!(c.rays.contains(n));
            }
            prop_assert!(c.q_left.b == 1 && c.q_right.a == 1);
            prop_assert!(Some(&c.q_left) != normals.first() && Some(&c.q_right) != normals.last());
        }
    }
}
