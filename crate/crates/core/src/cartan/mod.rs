//! Cartan calculus with polynomial coefficients on `Rⁿ`.
//!
//! Conventions: the interior product contracts the first slot, wedge uses
//! the determinant convention (`dx∧dy(∂x,∂y) = 1`), and `L_X` is defined by
//! the Cartan formula.

mod types;

use std::collections::BTreeMap;
use std::fmt;

pub use types::{PolyBivector, PolyForm, PolyOneOne, PolyVectorField};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::report::{CheckReport, Witness};
use types::canonicalize;

/// `⟨X, ξ⟩ = Σ Xⁱ ξᵢ`.
pub fn pairing(x: &PolyVectorField, xi: &PolyForm) -> Result<Poly> {
    Error::check_dim(x.n(), xi.n())?;
    Error::check_dim(1, xi.degree())?;
    Ok((0..x.n()).fold(Poly::zero(x.n()), |acc, i| {
        acc + x.component(i) * &xi.component(&[i])
    }))
}

/// `[X,Y]ⁱ = Σⱼ (Xʲ∂ⱼYⁱ − Yʲ∂ⱼXⁱ)`.
pub fn lie_bracket(x: &PolyVectorField, y: &PolyVectorField) -> Result<PolyVectorField> {
    Error::check_dim(x.n(), y.n())?;
    PolyVectorField::new(
        (0..x.n())
            .map(|i| x.apply(y.component(i)) - y.apply(x.component(i)))
            .collect(),
    )
}

pub fn exterior_derivative(w: &PolyForm) -> PolyForm {
    let n = w.n();
    let mut out = PolyForm::zero(n, w.degree() + 1);
    for (idx, c) in w.components() {
        for i in (0..n).filter(|i| !idx.contains(i)) {
            let mut key = Vec::with_capacity(idx.len() + 1);
            key.push(i);
            key.extend_from_slice(idx);
            out.accumulate(key, c.d(i));
        }
    }
    out
}

/// `i_Xω` contracting the first slot; zero on 0-forms.
fn contract(x: &PolyVectorField, w: &PolyForm) -> PolyForm {
    let n = w.n();
    if w.degree() == 0 {
        return PolyForm::zero(n, 0);
    }
    let mut out = PolyForm::zero(n, w.degree() - 1);
    for (idx, c) in w.components() {
        for (a, &i) in idx.iter().enumerate() {
            let mut rest = idx.clone();
            rest.remove(a);
            let term = x.component(i) * c;
            out.accumulate(rest, if a % 2 == 0 { term } else { -term });
        }
    }
    out
}

pub fn interior_product(x: &PolyVectorField, w: &PolyForm) -> Result<PolyForm> {
    Error::check_dim(x.n(), w.n())?;
    if w.degree() == 0 {
        return Err(Error::Degree("interior product of a 0-form".into()));
    }
    Ok(contract(x, w))
}

/// `L_Xω = i_X dω + d i_X ω`.
pub fn lie_derivative(x: &PolyVectorField, w: &PolyForm) -> Result<PolyForm> {
    Error::check_dim(x.n(), w.n())?;
    let a = contract(x, &exterior_derivative(w));
    if w.degree() == 0 {
        return Ok(a);
    }
    Ok(a.add(&exterior_derivative(&contract(x, w))))
}

pub fn wedge(a: &PolyForm, b: &PolyForm) -> Result<PolyForm> {
    Error::check_dim(a.n(), b.n())?;
    let mut out = PolyForm::zero(a.n(), a.degree() + b.degree());
    for (i, f) in a.components() {
        for (j, g) in b.components() {
            let mut key = i.clone();
            key.extend_from_slice(j);
            out.accumulate(key, f * g);
        }
    }
    Ok(out)
}

/// `T_{N0}(X,Y) = [N0X, N0Y] − N0([N0X,Y] + [X,N0Y] − N0[X,Y])`.
pub fn nijenhuis_torsion_vf(
    n0: &PolyOneOne,
    x: &PolyVectorField,
    y: &PolyVectorField,
) -> Result<PolyVectorField> {
    Error::check_dim(n0.n(), x.n())?;
    Error::check_dim(n0.n(), y.n())?;
    let nx = n0.apply_unchecked(x);
    let ny = n0.apply_unchecked(y);
    let deformed = lie_bracket(&nx, y)?
        .add(&lie_bracket(x, &ny)?)
        .sub(&n0.apply_unchecked(&lie_bracket(x, y)?));
    Ok(lie_bracket(&nx, &ny)?.sub(&n0.apply_unchecked(&deformed)))
}

/// The degree-0 derivation extending `ᵗN0` on 1-forms:
/// `(i_{N0}ω)(v₁,…,v_k) = Σₐ ω(v₁,…,N0vₐ,…,v_k)`.
pub fn i_derivation(n0: &PolyOneOne, w: &PolyForm) -> Result<PolyForm> {
    Error::check_dim(n0.n(), w.n())?;
    let n = w.n();
    let mut out = PolyForm::zero(n, w.degree());
    for (idx, c) in w.components() {
        for a in 0..idx.len() {
            for j in 0..n {
                let m = n0.entry(idx[a], j);
                if m.is_zero() {
                    continue;
                }
                let mut key = idx.clone();
                key[a] = j;
                out.accumulate(key, c * m);
            }
        }
    }
    Ok(out)
}

/// `d^{N0} = i_{N0}d − d i_{N0}`.
pub fn d_n0(n0: &PolyOneOne, w: &PolyForm) -> Result<PolyForm> {
    let a = i_derivation(n0, &exterior_derivative(w))?;
    let b = exterior_derivative(&i_derivation(n0, w)?);
    Ok(a.sub(&b))
}

/// `{f, g} = Λ(df, dg)`.
pub fn poisson_bracket(lambda: &PolyBivector, f: &Poly, g: &Poly) -> Result<Poly> {
    lambda.eval(
        &exterior_derivative(&PolyForm::function(f.clone())),
        &exterior_derivative(&PolyForm::function(g.clone())),
    )
}

/// `{f,{g,h}} + {g,{h,f}} + {h,{f,g}}`.
pub fn jacobiator(lambda: &PolyBivector, f: &Poly, g: &Poly, h: &Poly) -> Result<Poly> {
    let pb = |a: &Poly, b: &Poly| poisson_bracket(lambda, a, b);
    Ok(pb(f, &pb(g, h)?)? + pb(g, &pb(h, f)?)? + pb(h, &pb(f, g)?)?)
}

/// A skew trivector `Σ_{i<j<k} J^{ijk} ∂ᵢ∧∂ⱼ∧∂ₖ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Trivector {
    n: usize,
    components: BTreeMap<[usize; 3], Poly>,
}

impl Trivector {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &BTreeMap<[usize; 3], Poly> {
        &self.components
    }

    /// `J^{ijk}` for any indices, by skew symmetry.
    pub fn entry(&self, i: usize, j: usize, k: usize) -> Poly {
        let mut idx = [i, j, k];
        match canonicalize(&mut idx) {
            None => Poly::zero(self.n),
            Some(sign) => {
                let c = self.components.get(&idx).cloned().unwrap_or_else(|| Poly::zero(self.n));
                if sign < 0 {
                    -c
                } else {
                    c
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// `J(ξ, η, ζ) = Σ J^{ijk} ξᵢ ηⱼ ζₖ`.
    pub fn eval(&self, xi: &PolyForm, eta: &PolyForm, zeta: &PolyForm) -> Result<Poly> {
        for w in [xi, eta, zeta] {
            Error::check_dim(self.n, w.n())?;
            Error::check_dim(1, w.degree())?;
        }
        let n = self.n;
        let mut acc = Poly::zero(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let e = self.entry(i, j, k);
                    if !e.is_zero() {
                        acc = acc + e * xi.component(&[i]) * eta.component(&[j]) * zeta.component(&[k]);
                    }
                }
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for Trivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .components
            .iter()
            .map(|([i, j, k], c)| format!("({c})∂{}∧∂{}∧∂{}", i + 1, j + 1, k + 1))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// The Jacobiator of `{f,g} = Λ(df,dg)` as a trivector: its value on
/// `(dxⁱ, dxʲ, dxᵏ)` is the Jacobi defect of the coordinate triple. It
/// vanishes exactly when `Λ` is Poisson.
pub fn schouten_square(lambda: &PolyBivector) -> Trivector {
    let n = lambda.n();
    let mut components = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let cyc = |a: usize, b: usize, c: usize| {
                    (0..n).fold(Poly::zero(n), |acc, s| acc + lambda.entry(a, s) * lambda.entry(b, c).d(s))
                };
                let v = cyc(i, j, k) + cyc(j, k, i) + cyc(k, i, j);
                if !v.is_zero() {
                    components.insert([i, j, k], v);
                }
            }
        }
    }
    Trivector { n, components }
}

/// Poisson test: the Jacobiator vanishes on every coordinate triple, which
/// is complete because the Jacobiator is a trivector.
pub fn is_poisson(lambda: &PolyBivector) -> CheckReport {
    let sq = schouten_square(lambda);
    let witness = sq.components().iter().next().map(|([i, j, k], v)| {
        Witness::new(
            "{xi,{xj,xk}} + {xj,{xk,xi}} + {xk,{xi,xj}} = 0",
            vec![*i, *j, *k],
            vec![format!("x{}", i + 1), format!("x{}", j + 1), format!("x{}", k + 1)],
            v,
            0,
        )
    });
    let n = lambda.n();
    CheckReport::from_witness(
        "poisson",
        witness,
        format!("Jacobiator of Λ on {} coordinate triples", n * n.saturating_sub(1) * n.saturating_sub(2) / 6),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn p(s: &str, n: usize) -> Poly {
        Poly::parse(s, n).unwrap()
    }

    #[test]
    fn bracket_examples() {
        let dx = PolyVectorField::coordinate(2, 0);
        let dy = PolyVectorField::coordinate(2, 1);
        assert!(lie_bracket(&dx, &dy).unwrap().is_zero());
        let xdx = PolyVectorField::parse(&["x1", "0"]).unwrap();
        assert_eq!(lie_bracket(&dx, &xdx).unwrap(), dx);
    }

    #[test]
    fn exterior_derivative_examples() {
        let w = PolyForm::from_components(2, 1, [(vec![1], p("x1", 2))]).unwrap();
        let dw = exterior_derivative(&w);
        assert_eq!(dw, PolyForm::from_components(2, 2, [(vec![0, 1], Poly::one(2))]).unwrap());
        let f = PolyForm::function(p("x1^2*x2 - 3*x2^3", 2));
        assert!(exterior_derivative(&exterior_derivative(&f)).is_zero());
        assert!(exterior_derivative(&PolyForm::function(Poly::from_int(2, 7))).is_zero());
    }

    #[test]
    fn interior_product_examples() {
        let dxdy = PolyForm::from_components(2, 2, [(vec![0, 1], Poly::one(2))]).unwrap();
        let dx = PolyVectorField::coordinate(2, 0);
        let dy = PolyVectorField::coordinate(2, 1);
        assert_eq!(interior_product(&dx, &dxdy).unwrap(), PolyForm::dx(2, 1));
        assert_eq!(interior_product(&dy, &dxdy).unwrap(), PolyForm::dx(2, 0).scale(&int(-1)));
        assert!(interior_product(&dy, &PolyForm::dx(2, 0)).unwrap().is_zero());
        assert!(matches!(
            interior_product(&dx, &PolyForm::function(Poly::one(2))),
            Err(Error::Degree(_))
        ));
    }

    #[test]
    fn lie_derivative_examples() {
        let dx = PolyVectorField::coordinate(2, 0);
        let xdx = PolyForm::from_components(2, 1, [(vec![0], p("x1", 2))]).unwrap();
        assert_eq!(lie_derivative(&dx, &xdx).unwrap(), PolyForm::dx(2, 0));
        assert!(lie_derivative(&dx, &PolyForm::dx(2, 1)).unwrap().is_zero());
    }

    #[test]
    fn torsion_examples() {
        let j = PolyOneOne::from_ints(&[&[0, -1], &[1, 0]]).unwrap();
        let diag = PolyOneOne::from_ints(&[&[2, 0], &[0, 5]]).unwrap();
        let fields = [
            PolyVectorField::coordinate(2, 0),
            PolyVectorField::parse(&["x1*x2", "x2^2"]).unwrap(),
            PolyVectorField::parse(&["1 + x1", "-x1^2"]).unwrap(),
        ];
        for x in &fields {
            for y in &fields {
                assert!(nijenhuis_torsion_vf(&j, x, y).unwrap().is_zero());
                assert!(nijenhuis_torsion_vf(&PolyOneOne::scalar(2, int(3)), x, y).unwrap().is_zero());
            }
        }
        let c = [PolyVectorField::coordinate(2, 0), PolyVectorField::coordinate(2, 1)];
        for x in &c {
            for y in &c {
                assert!(nijenhuis_torsion_vf(&diag, x, y).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn i_derivation_examples() {
        let w = PolyForm::from_components(3, 2, [(vec![0, 2], p("x2", 3)), (vec![1, 2], p("x1", 3))]).unwrap();
        assert_eq!(i_derivation(&PolyOneOne::identity(3), &w).unwrap(), w.scale(&int(2)));
        let n0 = PolyOneOne::parse(&[&["0", "x1"], &["1", "0"]]).unwrap();
        let dx = PolyForm::dx(2, 0);
        assert_eq!(i_derivation(&n0, &dx).unwrap(), n0.transpose_apply(&dx).unwrap());
        assert!(i_derivation(&n0, &PolyForm::function(p("x1", 2))).unwrap().is_zero());
    }

    #[test]
    fn d_n0_examples() {
        let w = PolyForm::from_components(2, 1, [(vec![0], p("x1*x2^2", 2)), (vec![1], p("x1^3", 2))]).unwrap();
        assert_eq!(d_n0(&PolyOneOne::identity(2), &w).unwrap(), exterior_derivative(&w));
        assert!(d_n0(&PolyOneOne::zero(2), &w).unwrap().is_zero());
        let n0 = PolyOneOne::parse(&[&["x2", "1"], &["0", "x1"]]).unwrap();
        let f = PolyForm::function(p("x1^2*x2", 2));
        assert_eq!(
            d_n0(&n0, &f).unwrap(),
            i_derivation(&n0, &exterior_derivative(&f)).unwrap()
        );
    }

    #[test]
    fn poisson_examples() {
        let c = PolyBivector::elementary(2, 0, 1, Poly::one(2)).unwrap();
        assert!(is_poisson(&c).passed());
        let x = PolyBivector::elementary(2, 0, 1, p("x1", 2)).unwrap();
        assert!(is_poisson(&x).passed());
        let r3 = PolyBivector::from_components(
            3,
            [((0, 1), p("x3", 3)), ((1, 2), p("x1", 3)), ((0, 2), p("-x2", 3))],
        )
        .unwrap();
        assert!(is_poisson(&r3).passed(), "so(3)* Lie-Poisson");
        let bad = PolyBivector::from_components(3, [((0, 1), Poly::one(3)), ((1, 2), p("x2", 3))]).unwrap();
        let r = is_poisson(&bad);
        assert!(!r.passed());
        assert_eq!(r.witness.unwrap().indices, vec![0, 1, 2]);
    }

    #[test]
    fn trivector_matches_jacobiator_on_functions() {
        let lam = PolyBivector::from_components(3, [((0, 1), Poly::one(3)), ((1, 2), p("x1", 3))]).unwrap();
        let sq = schouten_square(&lam);
        let fs = [p("x1^2", 3), p("x2 + x3*x1", 3), p("x3^2 - x2", 3)];
        let d = |f: &Poly| exterior_derivative(&PolyForm::function(f.clone()));
        assert_eq!(
            sq.eval(&d(&fs[0]), &d(&fs[1]), &d(&fs[2])).unwrap(),
            jacobiator(&lam, &fs[0], &fs[1], &fs[2]).unwrap()
        );
    }
}
