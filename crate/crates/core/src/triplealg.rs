//! The 111-algebra of a tensor, its coordinate modules and the induced
//! bilinear map.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{QMat, Subspace, Q};
use crate::module::{local_invariants, support_decomposition, FiniteModule};
use crate::tensor::{is_concise_in, is_one_generic, Dir, Tensor3};

/// Triples `(X, Y, Z)` with `X·T = Y·T = Z·T`; the unit triple comes first.
#[derive(Clone, Debug, PartialEq)]
pub struct TripleAlgebra {
    pub m: usize,
    pub basis: Vec<[QMat; 3]>,
    pub contains_unit: bool,
    /// Whether the input was concise; otherwise projections may fail to be injective.
    pub concise_input: bool,
}

impl TripleAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_sharp(&self) -> bool {
        self.dim() == self.m
    }

    /// Projection of the basis to one factor.
    pub fn projection(&self, dir: Dir) -> Vec<QMat> {
        self.basis.iter().map(|t| t[dir.index()].clone()).collect()
    }

    pub fn projection_injective(&self, dir: Dir) -> bool {
        let n = self.m * self.m;
        Subspace::span(
            n,
            &self
                .projection(dir)
                .iter()
                .map(|x| x.flatten())
                .collect::<Vec<_>>(),
        )
        .dim()
            == self.dim()
    }

    /// Componentwise products of basis triples stay in the span.
    pub fn is_closed(&self) -> bool {
        let flat = |t: &[QMat; 3]| -> Vec<Q> { t.iter().flat_map(|x| x.flatten()).collect() };
        let span = Subspace::span(
            3 * self.m * self.m,
            &self.basis.iter().map(flat).collect::<Vec<_>>(),
        );
        self.basis.iter().all(|s| {
            self.basis
                .iter()
                .all(|t| span.contains(&flat(&[&s[0] * &t[0], &s[1] * &t[1], &s[2] * &t[2]])))
        })
    }

    pub fn is_commutative(&self) -> bool {
        self.basis.iter().all(|s| {
            self.basis
                .iter()
                .all(|t| (0..3).all(|k| s[k].commutes_with(&t[k])))
        })
    }
}

/// Solves the stacked system `X·T − Y·T = 0, Y·T − Z·T = 0` in `3m²` unknowns.
pub fn one_one_one_algebra(t: &Tensor3) -> TripleAlgebra {
    let m = t.m();
    let n = m * m;
    let mut sys = QMat::zeros(2 * m * m * m, 3 * n);
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                let row = (a * m + b) * m + c;
                for k in 0..m {
                    let (ta, tb, tc) = (t.get(k, b, c), t.get(a, k, c), t.get(a, b, k));
                    if !ta.is_zero() {
                        sys[(row, a * m + k)] += ta;
                    }
                    if !tb.is_zero() {
                        sys[(row, n + b * m + k)] -= tb;
                        sys[(row + m * m * m, n + b * m + k)] += tb;
                    }
                    if !tc.is_zero() {
                        sys[(row + m * m * m, 2 * n + c * m + k)] -= tc;
                    }
                }
            }
        }
    }
    let kernel = Subspace::span(3 * n, &sys.kernel());
    let mut unit = vec![Q::zero(); 3 * n];
    for k in 0..3 {
        for i in 0..m {
            unit[k * n + i * m + i] = Q::one();
        }
    }
    let contains_unit = kernel.contains(&unit);
    // Unit first, then the echelon basis vectors that extend the span.
    let mut chosen = Vec::new();
    let mut span = Subspace::span(3 * n, &[]);
    if contains_unit {
        span = Subspace::span(3 * n, std::slice::from_ref(&unit));
        chosen.push(unit);
    }
    for v in kernel.basis() {
        if !span.contains(&v) {
            let mut b = span.basis();
            b.push(v.clone());
            span = Subspace::span(3 * n, &b);
            chosen.push(v);
        }
    }
    let basis = chosen
        .into_iter()
        .map(|v| {
            [
                QMat::from_flat(m, m, &v[..n]),
                QMat::from_flat(m, m, &v[n..2 * n]),
                QMat::from_flat(m, m, &v[2 * n..]),
            ]
        })
        .collect();
    let concise_input = Dir::ALL.iter().all(|&d| is_concise_in(t, d));
    TripleAlgebra {
        m,
        basis,
        contains_unit,
        concise_input,
    }
}

/// `(A̲, B̲, C̲)`: the algebra acting on each factor, unit dropped from the variables.
pub fn coordinate_modules(t: &Tensor3) -> Result<[FiniteModule; 3]> {
    let alg = one_one_one_algebra(t);
    if !alg.is_sharp() || !alg.contains_unit {
        return Err(Error::NotSharp {
            dim: alg.dim(),
            m: alg.m,
        });
    }
    let module = |dir: Dir| FiniteModule::new(alg.m, alg.projection(dir)[1..].to_vec());
    Ok([module(Dir::A)?, module(Dir::B)?, module(Dir::C)?])
}

/// Whether a module is generated by one element, checked piece by piece.
pub fn module_is_cyclic(module: &FiniteModule) -> Result<bool> {
    let dec = support_decomposition(module)?;
    for piece in &dec.pieces {
        if !local_invariants(&piece.local)?.cyclic {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BilinearReport {
    /// `φ: A̲^∨ ⊗ B̲^∨ → C̲` hits all of `C`.
    pub surjective: bool,
    /// No nonzero `α` with `φ(α, −) = 0`.
    pub left_nondegenerate: bool,
    pub right_nondegenerate: bool,
    /// Cyclicity of `A̲^∨`, `B̲^∨` and `C̲^∨`.
    pub cyclic: [bool; 3],
    /// 1-genericity of the tensor in A, B, C.
    pub one_generic: [bool; 3],
}

impl BilinearReport {
    /// Some cyclic flag holds exactly when the tensor is 1_*-generic.
    pub fn consistent(&self) -> bool {
        self.cyclic.iter().any(|&x| x) == self.one_generic.iter().any(|&x| x)
    }

    /// The finer statement: the flag of each factor equals 1-genericity there.
    pub fn consistent_per_factor(&self) -> bool {
        self.cyclic == self.one_generic
    }
}

/// Realizes `φ(α, β) = T(α, β, ·)` and reports the module-theoretic flags.
pub fn bilinear_map_diagnostics(t: &Tensor3) -> Result<BilinearReport> {
    let [a, b, c] = coordinate_modules(t)?;
    let m = t.m();
    // The three flattenings answer surjectivity and the two nondegeneracies.
    let surjective = t.flattening(Dir::C).rank() == m;
    let left_nondegenerate = t.flattening(Dir::A).rank() == m;
    let right_nondegenerate = t.flattening(Dir::B).rank() == m;
    let cyclic = [
        module_is_cyclic(&a.dual())?,
        module_is_cyclic(&b.dual())?,
        module_is_cyclic(&c.dual())?,
    ];
    let one_generic = [
        is_one_generic(t, Dir::A)?,
        is_one_generic(t, Dir::B)?,
        is_one_generic(t, Dir::C)?,
    ];
    Ok(BilinearReport {
        surjective,
        left_nondegenerate,
        right_nondegenerate,
        cyclic,
        one_generic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{from_espace, isomorphic_modules, multiplication_tensor};
    use crate::tensor::{choose_alpha, e_space, transform_tensor, Perm};

    fn shift(n: usize, moves: &[(usize, usize)]) -> QMat {
        let mut x = QMat::zeros(n, n);
        for &(from, to) in moves {
            x[(to, from)] = Q::one();
        }
        x
    }

    fn m14() -> FiniteModule {
        FiniteModule::new(
            5,
            vec![
                shift(5, &[(0, 1), (1, 2)]),
                shift(5, &[(0, 2)]),
                shift(5, &[(0, 3), (3, 4)]),
                shift(5, &[(0, 4)]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn unit_tensor_is_diagonal() {
        let alg = one_one_one_algebra(&Tensor3::unit(5));
        assert_eq!(alg.dim(), 5);
        assert!(alg.contains_unit && alg.is_closed() && alg.is_commutative());
        for t in &alg.basis {
            for x in t {
                assert!((0..5).all(|i| (0..5).all(|j| i == j || x[(i, j)].is_zero())));
            }
        }
    }

    #[test]
    fn algebra_tensor_is_sharp() {
        let t = multiplication_tensor(&m14()).unwrap();
        let alg = one_one_one_algebra(&t);
        assert!(alg.is_sharp());
        assert!(Dir::ALL.iter().all(|&d| alg.projection_injective(d)));
        let [a, b, c] = coordinate_modules(&t).unwrap();
        // The algebra acts on A through the transposed slices.
        assert!(module_is_cyclic(&a.dual()).unwrap());
        assert!(!module_is_cyclic(&a).unwrap());
        let r = bilinear_map_diagnostics(&t).unwrap();
        assert_eq!(r.one_generic, [true, false, true]);
        assert!(r.consistent_per_factor());
        let e = from_espace(&e_space(&t, &choose_alpha(&t).unwrap()).unwrap()).unwrap();
        let fb = crate::module::fingerprint_core(&b).unwrap();
        let fc = crate::module::fingerprint_core(&c).unwrap();
        let fe = crate::module::fingerprint_core(&e).unwrap();
        let fed = crate::module::fingerprint_core(&e.dual()).unwrap();
        assert!((fb == fe && fc == fed) || (fb == fed && fc == fe));
        let _ = isomorphic_modules;
    }

    #[test]
    fn dimension_invariant_under_transforms() {
        let t = multiplication_tensor(&m14()).unwrap();
        let g = QMat::from_i64(&[
            &[1, 1, 0, 0, 0],
            &[0, 1, 0, 0, 0],
            &[0, 0, 2, 0, 1],
            &[0, 0, 0, 1, 0],
            &[1, 0, 0, 0, 1],
        ]);
        for sigma in Perm::all() {
            let s = transform_tensor(&t, &g, &g.transpose(), &QMat::identity(5), sigma).unwrap();
            assert_eq!(one_one_one_algebra(&s).dim(), 5);
        }
    }

    #[test]
    fn semisimple_diagnostics() {
        let r = bilinear_map_diagnostics(&Tensor3::unit(5)).unwrap();
        assert!(r.surjective && r.left_nondegenerate && r.right_nondegenerate);
        assert_eq!(r.cyclic, [true; 3]);
        assert!(r.consistent());
    }

    #[test]
    fn not_sharp_is_an_error() {
        let mut t = Tensor3::zeros(2);
        t.set(0, 0, 0, Q::one());
        assert!(matches!(
            coordinate_modules(&t),
            Err(Error::NotSharp { .. })
        ));
    }
}
