//! Lie bialgebras, their doubles, and block tensors on `E ⊕ E*`.

use super::{is_paired, CourantStructure, Pairing};
use crate::algebra::bilinear::leibniz_report;
use crate::algebra::product::{torsion, Contracted, Product};
use crate::algebra::{contract, BilinearOp, OneOneTensor, Vector};
use crate::error::{Error, Result};
use crate::poly::Rational;
use crate::report::{cross_checked, first_witness, CheckReport, StagedCheck, Witness};

/// A pair of brackets on `E` and on `E*` (coordinates in the dual basis).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieBialgebra {
    pub bracket_e: BilinearOp,
    pub bracket_estar: BilinearOp,
}

impl LieBialgebra {
    pub fn new(bracket_e: BilinearOp, bracket_estar: BilinearOp) -> Result<Self> {
        Error::check_dim(bracket_e.dim(), bracket_estar.dim())?;
        Ok(LieBialgebra {
            bracket_e,
            bracket_estar,
        })
    }

    /// `(E, E*)` with the zero bracket on `E*`.
    pub fn trivial(bracket_e: BilinearOp) -> Result<Self> {
        let d = bracket_e.dim();
        Self::new(bracket_e, BilinearOp::zero(d))
    }

    pub fn dim_e(&self) -> usize {
        self.bracket_e.dim()
    }

    /// Both brackets skew and Jacobi, and the double Leibniz.
    pub fn check(&self) -> CheckReport {
        let mut staged = StagedCheck::new("lie-bialgebra");
        let stages = [
            skew_report("bracket_e skew", &self.bracket_e),
            leibniz_report("bracket_e Jacobi", &self.bracket_e),
            skew_report("bracket_estar skew", &self.bracket_estar),
            leibniz_report("bracket_estar Jacobi", &self.bracket_estar),
            leibniz_report("double Leibniz", &drinfeld_double(self).op),
        ];
        for s in &stages {
            if let Some(fail) = staged.stage(s) {
                return fail;
            }
        }
        staged.finish()
    }
}

fn skew_report(check: &str, op: &BilinearOp) -> CheckReport {
    let d = op.dim();
    let w = first_witness(d * d, |t| {
        let (i, j) = (t / d, t % d);
        let a = op.basis_product(i, j);
        let b = op.basis_product(j, i);
        (!a.add(&b).is_zero()).then(|| {
            Witness::new(
                "[X,Y] = −[Y,X]",
                vec![i, j],
                vec![format!("e{}", i + 1), format!("e{}", j + 1)],
                a,
                b.scale(&Rational::from_integer((-1).into())),
            )
        })
    });
    CheckReport::from_witness(check, w, format!("{check} on {} basis pairs", d * d))
}

/// Coordinates on `A = E ⊕ E*`: the first `n` entries are `E`, the last
/// `n` are `E*`.
#[derive(Clone, Copy)]
struct Split {
    n: usize,
}

impl Split {
    fn e(&self, x: &Vector) -> Vector {
        let mut c = x.coords().to_vec();
        c.resize(2 * self.n, Rational::default());
        Vector::new(c)
    }

    fn estar(&self, xi: &Vector) -> Vector {
        let mut c = vec![Rational::default(); self.n];
        c.extend(xi.coords().iter().cloned());
        Vector::new(c)
    }

    fn proj_e(&self, v: &Vector) -> Vector {
        Vector::new(v.coords()[..self.n].to_vec())
    }

    fn proj_estar(&self, v: &Vector) -> Vector {
        Vector::new(v.coords()[self.n..].to_vec())
    }
}

/// `ad*_X η`, determined by `⟨ad*_X η, Z⟩ = −⟨η, [X,Z]⟩` (zero anchor).
fn coadjoint(bracket: &BilinearOp, x: &Vector, eta: &Vector) -> Vector {
    let d = bracket.dim();
    Vector::new(
        (0..d)
            .map(|k| -eta.dot(&bracket.mul(x, &Vector::basis(d, k))))
            .collect(),
    )
}

/// The Courant product on `E ⊕ E*`:
///
/// `(X+ξ)∘(Y+η) = ([X,Y] + L_ξY − i_η dX) + ([ξ,η] + L_Xη − i_Y dξ)`.
///
/// Over a point every Lie derivative and contraction here is fixed by the
/// duality relations `⟨X∘η, Y⟩ = −⟨η, X∘Y⟩` and `⟨X∘η, ξ⟩ = ⟨X, η∘ξ⟩`, so
/// `L_Xη = ad*_X η` and `i_Y dξ = ad*_Y ξ` (and dually on `E*`).
pub fn drinfeld_double(b: &LieBialgebra) -> CourantStructure {
    let n = b.dim_e();
    let split = Split { n };
    let product = |u: &Vector, v: &Vector| -> Vector {
        let (x, xi) = (split.proj_e(u), split.proj_estar(u));
        let (y, eta) = (split.proj_e(v), split.proj_estar(v));
        let e_part = b
            .bracket_e
            .mul(&x, &y)
            .add(&coadjoint(&b.bracket_estar, &xi, &y))
            .sub(&coadjoint(&b.bracket_estar, &eta, &x));
        let estar_part = b
            .bracket_estar
            .mul(&xi, &eta)
            .add(&coadjoint(&b.bracket_e, &x, &eta))
            .sub(&coadjoint(&b.bracket_e, &y, &xi));
        split.e(&e_part).add(&split.estar(&estar_part))
    };
    let op = BilinearOp::from_table(2 * n, |i, j| {
        product(&Vector::basis(2 * n, i), &Vector::basis(2 * n, j))
    });
    CourantStructure {
        op,
        pairing: Pairing::hyperbolic(n),
    }
}

/// `N = [[N_E, Λ], [Ω, N_{E*}]]` on `E ⊕ E*`, with `Λ : E* → E` and
/// `Ω : E → E*`. Every block is an `n × n` matrix in the `E`/dual bases.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlockTensor {
    pub n_e: OneOneTensor,
    pub lambda: OneOneTensor,
    pub omega: OneOneTensor,
    pub n_estar: OneOneTensor,
}

impl BlockTensor {
    pub fn new(
        n_e: OneOneTensor,
        lambda: OneOneTensor,
        omega: OneOneTensor,
        n_estar: OneOneTensor,
    ) -> Result<Self> {
        let d = n_e.dim();
        for m in [&lambda, &omega, &n_estar] {
            Error::check_dim(d, m.dim())?;
        }
        Ok(BlockTensor {
            n_e,
            lambda,
            omega,
            n_estar,
        })
    }

    pub fn identity(n: usize) -> Self {
        BlockTensor {
            n_e: OneOneTensor::identity(n),
            lambda: OneOneTensor::zero(n),
            omega: OneOneTensor::zero(n),
            n_estar: OneOneTensor::identity(n),
        }
    }

    /// The triangular tensor `[[I, Λ], [0, I]]`.
    pub fn triangular(lambda: OneOneTensor) -> Self {
        let n = lambda.dim();
        BlockTensor {
            n_e: OneOneTensor::identity(n),
            lambda,
            omega: OneOneTensor::zero(n),
            n_estar: OneOneTensor::identity(n),
        }
    }

    pub fn dim_e(&self) -> usize {
        self.n_e.dim()
    }

    pub fn assemble(&self) -> OneOneTensor {
        let n = self.dim_e();
        OneOneTensor::from_fn(2 * n, |i, j| match (i < n, j < n) {
            (true, true) => self.n_e.entry(i, j).clone(),
            (true, false) => self.lambda.entry(i, j - n).clone(),
            (false, true) => self.omega.entry(i - n, j).clone(),
            (false, false) => self.n_estar.entry(i - n, j - n).clone(),
        })
    }
}

/// One half of the splitting, seen from its own side: `own` is `E` (with
/// `other = E*`, `m = Ω`) or `E*` (with `other = E`, `m = Λ`).
struct Side<'a> {
    name: &'static str,
    double: &'a BilinearOp,
    split: Split,
    own_is_e: bool,
    bracket_own: &'a BilinearOp,
    bracket_other: &'a BilinearOp,
    n_own: &'a OneOneTensor,
    m: &'a OneOneTensor,
}

impl Side<'_> {
    fn embed_own(&self, x: &Vector) -> Vector {
        if self.own_is_e {
            self.split.e(x)
        } else {
            self.split.estar(x)
        }
    }

    fn embed_other(&self, y: &Vector) -> Vector {
        if self.own_is_e {
            self.split.estar(y)
        } else {
            self.split.e(y)
        }
    }

    fn proj_own(&self, v: &Vector) -> Vector {
        if self.own_is_e {
            self.split.proj_e(v)
        } else {
            self.split.proj_estar(v)
        }
    }

    fn proj_other(&self, v: &Vector) -> Vector {
        if self.own_is_e {
            self.split.proj_estar(v)
        } else {
            self.split.proj_e(v)
        }
    }

    fn label(&self, i: usize) -> String {
        if self.own_is_e {
            format!("e{}", i + 1)
        } else {
            format!("ε{}", i + 1)
        }
    }

    /// `(aX∘Y + X∘aY)` projected to the own side: the bracket `[X,Y]^a`.
    fn upper(&self, a: &OneOneTensor, x: &Vector, y: &Vector) -> Vector {
        let (ex, ey) = (self.embed_own(x), self.embed_own(y));
        let (ax, ay) = (self.embed_other(&a.apply_unchecked(x)), self.embed_other(&a.apply_unchecked(y)));
        self.proj_own(&self.double.mul(&ax, &ey).add(&self.double.mul(&ex, &ay)))
    }

    /// `(aX∘Y + X∘aY − a(X∘Y))` projected to the other side: `d(a)(X, Y, ·)`,
    /// meaningful as a map even when `a` is not skew.
    fn d(&self, a: &OneOneTensor, x: &Vector, y: &Vector) -> Vector {
        let (ex, ey) = (self.embed_own(x), self.embed_own(y));
        let (ax, ay) = (self.embed_other(&a.apply_unchecked(x)), self.embed_other(&a.apply_unchecked(y)));
        let xy = self.proj_own(&self.double.mul(&ex, &ey));
        let a_xy = self.embed_other(&a.apply_unchecked(&xy));
        self.proj_other(
            &self
                .double
                .mul(&ax, &ey)
                .add(&self.double.mul(&ex, &ay))
                .sub(&a_xy),
        )
    }

    fn upper_op(&self, a: &OneOneTensor) -> BilinearOp {
        let n = self.split.n;
        BilinearOp::from_table(n, |i, j| self.upper(a, &Vector::basis(n, i), &Vector::basis(n, j)))
    }

    fn pairs<F>(&self, check: &str, identity: &str, f: F) -> CheckReport
    where
        F: Fn(&Vector, &Vector) -> Vector + Sync + Send,
    {
        let n = self.split.n;
        let w = first_witness(n * n, |t| {
            let (i, j) = (t / n, t % n);
            let v = f(&Vector::basis(n, i), &Vector::basis(n, j));
            (!v.is_zero()).then(|| {
                Witness::new(identity, vec![i, j], vec![self.label(i), self.label(j)], v, Vector::zero(n))
            })
        });
        CheckReport::from_witness(check, w, format!("{check} on {} basis pairs of {}", n * n, self.name))
    }

    /// `d(m) = 0` on the own side.
    fn closed(&self) -> CheckReport {
        self.pairs(
            &format!("d_{} closed", self.name),
            "(mX∘Y + X∘mY − m(X∘Y))_other = 0",
            |x, y| self.d(self.m, x, y),
        )
    }

    /// `T_{N}(X,Y) + [X,Y]^m_{N} − [X,Y]^{mN} = 0`.
    fn torsion_identity(&self) -> CheckReport {
        let m_op = self.upper_op(self.m);
        let mn = self.m.compose(self.n_own).expect("blocks share a dimension");
        self.pairs(
            &format!("torsion identity on {}", self.name),
            "T_N(X,Y) + [X,Y]^m_N − [X,Y]^{mN} = 0",
            |x, y| {
                torsion(self.bracket_own, self.n_own, x, y)
                    .add(&Contracted::new(&m_op, self.n_own).mul(x, y))
                    .sub(&self.upper(&mn, x, y))
            },
        )
    }

    /// `[mX, mY]_other − m([X,Y]^m) − d(mN)(X,Y,·) = 0`.
    fn bracket_identity(&self) -> CheckReport {
        let mn = self.m.compose(self.n_own).expect("blocks share a dimension");
        self.pairs(
            &format!("bracket identity on {}", self.name),
            "[mX,mY] − m([X,Y]^m) − d(mN)(X,Y,·) = 0",
            |x, y| {
                let mx = self.m.apply_unchecked(x);
                let my = self.m.apply_unchecked(y);
                self.bracket_other
                    .mul(&mx, &my)
                    .sub(&self.m.apply_unchecked(&self.upper(self.m, x, y)))
                    .sub(&self.d(&mn, x, y))
            },
        )
    }
}

fn sides<'a>(b: &'a LieBialgebra, double: &'a BilinearOp, n: &'a BlockTensor) -> [Side<'a>; 2] {
    let split = Split { n: b.dim_e() };
    [
        Side {
            name: "E",
            double,
            split,
            own_is_e: true,
            bracket_own: &b.bracket_e,
            bracket_other: &b.bracket_estar,
            n_own: &n.n_e,
            m: &n.omega,
        },
        Side {
            name: "E*",
            double,
            split,
            own_is_e: false,
            bracket_own: &b.bracket_estar,
            bracket_other: &b.bracket_e,
            n_own: &n.n_estar,
            m: &n.lambda,
        },
    ]
}

fn skew_block(name: &str, m: &OneOneTensor) -> CheckReport {
    let d = m.dim();
    let w = first_witness(d * d, |t| {
        let (i, j) = (t / d, t % d);
        (j <= i && *m.entry(i, j) != -m.entry(j, i).clone()).then(|| {
            Witness::new(
                format!("{name} skew: ⟨{name}X,Y⟩ = −⟨X,{name}Y⟩"),
                vec![i, j],
                vec![format!("e{}", i + 1), format!("e{}", j + 1)],
                m.entry(i, j),
                -m.entry(j, i).clone(),
            )
        })
    });
    CheckReport::from_witness(format!("{name} skew"), w, format!("{name} skew-symmetric"))
}

/// The closed-form condition system for `N` to be a Lie
/// bialgebroid-Nijenhuis tensor: the pairing condition `N_E + ᵗN_{E*} = λI`,
/// skewness and closedness of `Ω` and `Λ`, and the four torsion/bracket
/// identities. Reports the first failing condition, and is cross-checked
/// against [`definition_bialgebroid_nijenhuis`].
pub fn bialgebroid_nijenhuis_conditions(b: &LieBialgebra, n: &BlockTensor) -> Result<CheckReport> {
    Error::check_dim(b.dim_e(), n.dim_e())?;
    let double = drinfeld_double(b).op;
    let [e_side, estar_side] = sides(b, &double, n);
    let mut staged = StagedCheck::new("bialgebroid-nijenhuis");

    let sum = n.n_e.add(&n.n_estar.transpose())?;
    let paired = match sum.as_scalar() {
        Some(l) => CheckReport::pass("N_E + ᵗN_E* = λI", format!("N_E + ᵗN_E* = λI with λ = {l}")),
        None => CheckReport::fail(
            "N_E + ᵗN_E* = λI",
            Witness::new("N_E + ᵗN_E* = λI", vec![], vec![], &sum, "λI"),
            "N_E + ᵗN_E* is not scalar",
        ),
    };
    let stages = [
        paired,
        skew_block("Ω", &n.omega),
        skew_block("Λ", &n.lambda),
        e_side.closed(),
        estar_side.closed(),
        e_side.torsion_identity(),
        e_side.bracket_identity(),
        estar_side.torsion_identity(),
        estar_side.bracket_identity(),
    ];
    let primary = stages
        .iter()
        .find_map(|s| staged.stage(s))
        .unwrap_or_else(|| staged.finish());
    let direct = definition_bialgebroid_nijenhuis(b, n)?;
    Ok(cross_checked(primary, &direct))
}

/// Direct semantics: `N` paired, and an outer Nijenhuis tensor for both
/// `E` and `E*` (each closed under `∘_N`, torsion vanishing on each).
pub fn definition_bialgebroid_nijenhuis(b: &LieBialgebra, n: &BlockTensor) -> Result<CheckReport> {
    Error::check_dim(b.dim_e(), n.dim_e())?;
    let cs = drinfeld_double(b);
    let full = n.assemble();
    let contracted = contract(&cs.op, &full)?;
    let split = Split { n: b.dim_e() };
    let mut staged = StagedCheck::new("bialgebroid-nijenhuis-definition");
    let paired = match is_paired(&full, &cs.pairing)? {
        Some(l) => CheckReport::pass("paired", format!("N + N* = λI with λ = {l}")),
        None => CheckReport::fail(
            "paired",
            Witness::new("N + N* = λI", vec![], vec![], "N + N* not scalar", "λI"),
            "N is not paired",
        ),
    };
    if let Some(fail) = staged.stage(&paired) {
        return Ok(fail);
    }
    let dim = b.dim_e();
    for own_is_e in [true, false] {
        let (name, embed, other): (&str, &dyn Fn(&Vector) -> Vector, &dyn Fn(&Vector) -> Vector) = if own_is_e {
            ("E", &|x| split.e(x), &|v| split.proj_estar(v))
        } else {
            ("E*", &|x| split.estar(x), &|v| split.proj_e(v))
        };
        let label = |i: usize| if own_is_e { format!("e{}", i + 1) } else { format!("ε{}", i + 1) };
        let mut closure = None;
        let mut torsion_w = None;
        'outer: for i in 0..dim {
            for j in 0..dim {
                let (x, y) = (embed(&Vector::basis(dim, i)), embed(&Vector::basis(dim, j)));
                let prod = contracted.mul(&x, &y);
                let leak = other(&prod);
                if closure.is_none() && !leak.is_zero() {
                    closure = Some(Witness::new(
                        format!("{name} closed under ∘_N"),
                        vec![i, j],
                        vec![label(i), label(j)],
                        leak,
                        Vector::zero(dim),
                    ));
                    break 'outer;
                }
                let t = torsion(&cs.op, &full, &x, &y);
                if torsion_w.is_none() && !t.is_zero() {
                    torsion_w = Some(Witness::new(
                        format!("T_N = 0 on {name}"),
                        vec![i, j],
                        vec![label(i), label(j)],
                        t,
                        Vector::zero(2 * dim),
                    ));
                }
            }
        }
        for stage in [
            CheckReport::from_witness(
                format!("{name} closed"),
                closure,
                format!("{name} closed under ∘_N on {} basis pairs", dim * dim),
            ),
            CheckReport::from_witness(
                format!("{name} torsion"),
                torsion_w,
                format!("T_N vanishes on {name} ({} basis pairs)", dim * dim),
            ),
        ] {
            if let Some(fail) = staged.stage(&stage) {
                return Ok(fail);
            }
        }
    }
    Ok(staged.finish())
}

/// Restrictions of `∘_N` on the double to `E` and to `E*`.
pub fn contracted_bialgebra(b: &LieBialgebra, n: &BlockTensor) -> Result<LieBialgebra> {
    Error::check_dim(b.dim_e(), n.dim_e())?;
    let dim = b.dim_e();
    let split = Split { n: dim };
    let contracted = contract(&drinfeld_double(b).op, &n.assemble())?;
    let on_e = BilinearOp::from_table(dim, |i, j| {
        split.proj_e(&contracted.mul(
            &split.e(&Vector::basis(dim, i)),
            &split.e(&Vector::basis(dim, j)),
        ))
    });
    let on_estar = BilinearOp::from_table(dim, |i, j| {
        split.proj_estar(&contracted.mul(
            &split.estar(&Vector::basis(dim, i)),
            &split.estar(&Vector::basis(dim, j)),
        ))
    });
    LieBialgebra::new(on_e, on_estar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{catalogue, is_leibniz};
    use crate::courant_fd::check_courant_axioms;
    use crate::poly::int;

    #[test]
    fn double_restricts_to_the_brackets() {
        let b = LieBialgebra::trivial(catalogue::affine_line()).unwrap();
        let cs = drinfeld_double(&b);
        let split = Split { n: 2 };
        for i in 0..2 {
            for j in 0..2 {
                let x = split.e(&Vector::basis(2, i));
                let y = split.e(&Vector::basis(2, j));
                assert_eq!(cs.op.mul(&x, &y), split.e(&b.bracket_e.basis_product(i, j)));
                let xi = split.estar(&Vector::basis(2, i));
                let eta = split.estar(&Vector::basis(2, j));
                assert!(cs.op.mul(&xi, &eta).is_zero());
            }
        }
    }

    #[test]
    fn affine_double_is_courant() {
        let b = LieBialgebra::trivial(catalogue::affine_line()).unwrap();
        assert!(check_courant_axioms(&drinfeld_double(&b)).passed());
        assert!(b.check().passed());
    }

    #[test]
    fn abelian_double_is_abelian() {
        let b = LieBialgebra::trivial(catalogue::abelian(2)).unwrap();
        let cs = drinfeld_double(&b);
        assert!(cs.op.is_zero());
        assert_eq!(cs.pairing, Pairing::hyperbolic(2));
        assert!(check_courant_axioms(&cs).passed());
    }

    #[test]
    fn identity_block_tensor_passes_with_lambda_two() {
        let b = LieBialgebra::trivial(catalogue::affine_line()).unwrap();
        let r = bialgebroid_nijenhuis_conditions(&b, &BlockTensor::identity(2)).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.certificate.contains("λ = 2"));
    }

    #[test]
    fn non_skew_omega_fails_at_skewness() {
        let b = LieBialgebra::trivial(catalogue::affine_line()).unwrap();
        let mut n = BlockTensor::identity(2);
        n.omega = OneOneTensor::from_ints(&[&[0, 1], &[1, 0]]).unwrap();
        let r = bialgebroid_nijenhuis_conditions(&b, &n).unwrap();
        assert!(!r.passed());
        assert!(r.witness.unwrap().identity.starts_with("Ω skew"));
    }

    #[test]
    fn contracted_pair_of_identity_is_original() {
        let b = LieBialgebra::trivial(catalogue::affine_line()).unwrap();
        let c = contracted_bialgebra(&b, &BlockTensor::identity(2)).unwrap();
        assert_eq!(c, b);
        assert!(is_leibniz(&c.bracket_e).passed());
    }

    #[test]
    fn assemble_places_blocks() {
        let n = BlockTensor::new(
            OneOneTensor::from_ints(&[&[1, 2], &[3, 4]]).unwrap(),
            OneOneTensor::from_ints(&[&[0, 5], &[-5, 0]]).unwrap(),
            OneOneTensor::from_ints(&[&[0, 6], &[-6, 0]]).unwrap(),
            OneOneTensor::from_ints(&[&[7, 8], &[9, 10]]).unwrap(),
        )
        .unwrap();
        let m = n.assemble();
        assert_eq!(m.entry(0, 3), &int(5));
        assert_eq!(m.entry(3, 0), &int(-6));
        assert_eq!(m.entry(2, 3), &int(8));
        assert_eq!(m.entry(1, 0), &int(3));
    }
}
