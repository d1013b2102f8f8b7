//! The standard Courant algebroid `TM ⊕ T*M` on `Rⁿ` with polynomial
//! sections, `(X+ξ)∘(Y+η) = [X,Y] + (L_Xη − i_Y dξ)`.

mod checks;

use std::fmt;

pub use checks::{
    check_dirac_graph, check_lambda_omega, check_poisson_nijenhuis_weak,
    check_presymplectic_nijenhuis, check_trivial_bialgebroid_nijenhuis, courant_nijenhuis_test,
    dirac_nijenhuis_on_graph, koszul_bracket, lambda_bracket, lambda_omega, verify_lemma2, verify_theorem2,
    PoissonNijenhuisReport,
};

use crate::algebra::product::{Element, Endomorphism, Product};
use crate::cartan::{
    exterior_derivative, interior_product, lie_bracket, lie_derivative, PolyBivector, PolyForm,
    PolyOneOne, PolyVectorField,
};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, Rational};

/// A section `X + ξ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CourantSection {
    pub vf: PolyVectorField,
    pub form: PolyForm,
}

impl CourantSection {
    pub fn new(vf: PolyVectorField, form: PolyForm) -> Result<Self> {
        Error::check_dim(vf.n(), form.n())?;
        Error::check_dim(1, form.degree())?;
        Ok(CourantSection { vf, form })
    }

    pub fn zero(n: usize) -> Self {
        CourantSection {
            vf: PolyVectorField::zero(n),
            form: PolyForm::zero(n, 1),
        }
    }

    pub fn vector(vf: PolyVectorField) -> Self {
        let n = vf.n();
        CourantSection {
            vf,
            form: PolyForm::zero(n, 1),
        }
    }

    pub fn form(form: PolyForm) -> Result<Self> {
        Self::new(PolyVectorField::zero(form.n()), form)
    }

    pub fn n(&self) -> usize {
        self.vf.n()
    }

    pub fn mul_fn(&self, f: &Poly) -> Self {
        CourantSection {
            vf: self.vf.mul_fn(f),
            form: self.form.mul_fn(f),
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        CourantSection {
            vf: self.vf.scale(k),
            form: self.form.scale(k),
        }
    }

    /// `⟨X+ξ, Y+η⟩ = ⟨ξ,Y⟩ + ⟨η,X⟩`.
    pub fn pairing(&self, other: &Self) -> Result<Poly> {
        Ok(crate::cartan::pairing(&other.vf, &self.form)? + crate::cartan::pairing(&self.vf, &other.form)?)
    }
}

impl Element for CourantSection {
    fn add(&self, other: &Self) -> Self {
        CourantSection {
            vf: self.vf.add(&other.vf),
            form: self.form.add(&other.form),
        }
    }

    fn sub(&self, other: &Self) -> Self {
        CourantSection {
            vf: self.vf.sub(&other.vf),
            form: self.form.sub(&other.form),
        }
    }

    fn is_zero(&self) -> bool {
        self.vf.is_zero() && self.form.is_zero()
    }
}

impl fmt::Display for CourantSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.vf.is_zero(), self.form.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.vf),
            (true, false) => write!(f, "{}", self.form),
            (false, false) => write!(f, "{} + {}", self.vf, self.form),
        }
    }
}

/// The standard Courant product as a [`Product`].
#[derive(Clone, Copy, Debug, Default)]
pub struct StandardCourant;

fn product_unchecked(s: &CourantSection, t: &CourantSection) -> CourantSection {
    let vf = lie_bracket(&s.vf, &t.vf).expect("sections on the same space");
    let lie = lie_derivative(&s.vf, &t.form).expect("sections on the same space");
    let dxi = exterior_derivative(&s.form);
    let form = if dxi.is_zero() {
        lie
    } else {
        lie.sub(&interior_product(&t.vf, &dxi).expect("2-form"))
    };
    CourantSection { vf, form }
}

impl Product for StandardCourant {
    type Elem = CourantSection;
    fn mul(&self, x: &CourantSection, y: &CourantSection) -> CourantSection {
        product_unchecked(x, y)
    }
}

pub fn courant_product(s: &CourantSection, t: &CourantSection) -> Result<CourantSection> {
    Error::check_dim(s.n(), t.n())?;
    Ok(product_unchecked(s, t))
}

/// `N(X+ξ) = (N0X + Λξ) + (ΩX + ᵗN1ξ)` with `ΩX := i_XΩ` and `Λξ := i_ξΛ`.
/// `n1` is stored as a map of `TM`; its transpose acts on `T*M`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CourantTensor {
    pub n0: PolyOneOne,
    pub lambda: PolyBivector,
    pub omega: PolyForm,
    pub n1: PolyOneOne,
}

impl CourantTensor {
    pub fn new(n0: PolyOneOne, lambda: PolyBivector, omega: PolyForm, n1: PolyOneOne) -> Result<Self> {
        let n = n0.n();
        Error::check_dim(n, lambda.n())?;
        Error::check_dim(n, omega.n())?;
        Error::check_dim(n, n1.n())?;
        Error::check_dim(2, omega.degree())?;
        Ok(CourantTensor {
            n0,
            lambda,
            omega,
            n1,
        })
    }

    pub fn n(&self) -> usize {
        self.n0.n()
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal_blocks(PolyOneOne::identity(n), PolyOneOne::identity(n))
    }

    pub fn zero(n: usize) -> Self {
        Self::diagonal_blocks(PolyOneOne::zero(n), PolyOneOne::zero(n))
    }

    fn diagonal_blocks(n0: PolyOneOne, n1: PolyOneOne) -> Self {
        let n = n0.n();
        CourantTensor {
            n0,
            lambda: PolyBivector::zero(n),
            omega: PolyForm::zero(n, 2),
            n1,
        }
    }

    /// `N(X+ξ) = N0X − ᵗN0ξ`.
    pub fn diagonal(n0: &PolyOneOne) -> Self {
        Self::diagonal_blocks(n0.clone(), n0.scale(&-crate::poly::rational::one()))
    }

    /// `N(X+ξ) = N0X`.
    pub fn tangent(n0: &PolyOneOne) -> Self {
        Self::diagonal_blocks(n0.clone(), PolyOneOne::zero(n0.n()))
    }

    /// `N(X+ξ) = Λξ`.
    pub fn lambda_only(lambda: &PolyBivector) -> Self {
        let n = lambda.n();
        CourantTensor {
            lambda: lambda.clone(),
            ..Self::zero(n)
        }
    }

    /// `[[I, Λ], [0, I]]`.
    pub fn triangular(lambda: &PolyBivector) -> Self {
        let n = lambda.n();
        CourantTensor {
            lambda: lambda.clone(),
            ..Self::identity(n)
        }
    }

    /// `[[λ/2 I + N0, Λ], [Ω, λ/2 I − ᵗN0]]`.
    pub fn bialgebroid_shape(
        lambda_scalar: &Rational,
        n0: &PolyOneOne,
        lambda: &PolyBivector,
        omega: &PolyForm,
    ) -> Result<Self> {
        let half = PolyOneOne::scalar(n0.n(), lambda_scalar / Rational::from_integer(2.into()));
        Self::new(half.add(n0)?, lambda.clone(), omega.clone(), half.sub(n0)?)
    }

    /// For the shape `[[λ/2 I + N0, Λ], [Ω, λ/2 I − ᵗN0]]`, returns `(λ, N0)`.
    pub fn read_bialgebroid_shape(&self) -> Option<(Rational, PolyOneOne)> {
        let lambda = self.n0.add(&self.n1).ok()?.as_scalar()?;
        let half = PolyOneOne::scalar(self.n(), &lambda / Rational::from_integer(2.into()));
        Some((lambda, self.n0.sub(&half).ok()?))
    }

    pub fn apply(&self, s: &CourantSection) -> Result<CourantSection> {
        Error::check_dim(self.n(), s.n())?;
        Ok(self.apply_unchecked(s))
    }

    fn apply_unchecked(&self, s: &CourantSection) -> CourantSection {
        let n = self.n();
        let mut vf = self.n0.apply_unchecked(&s.vf);
        if !self.lambda.is_zero() {
            vf = vf.add(&self.lambda.sharp(&s.form).expect("1-form"));
        }
        let mut form = self.n1.transpose_apply(&s.form).expect("1-form");
        if !self.omega.is_zero() {
            form = form.add(&omega_map(&self.omega, &s.vf));
        }
        debug_assert_eq!(vf.n(), n);
        CourantSection { vf, form }
    }
}

impl Endomorphism<CourantSection> for CourantTensor {
    fn apply(&self, x: &CourantSection) -> CourantSection {
        self.apply_unchecked(x)
    }
}

/// `ΩX := i_XΩ`.
pub fn omega_map(omega: &PolyForm, x: &PolyVectorField) -> PolyForm {
    interior_product(x, omega).expect("2-form on the same space")
}

/// `Ns∘t + s∘Nt − N(s∘t)`.
pub fn deformed_product(s: &CourantSection, t: &CourantSection, n: &CourantTensor) -> Result<CourantSection> {
    Error::check_dim(s.n(), t.n())?;
    Error::check_dim(n.n(), s.n())?;
    Ok(crate::algebra::product::Contracted::new(&StandardCourant, n).mul(s, t))
}

/// A Dirac subbundle given as the graph of a 2-form (`X + ΩX`) or of a
/// bivector (`Λξ + ξ`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DiracGraph {
    Form(PolyForm),
    Bivector(PolyBivector),
}

impl DiracGraph {
    pub fn n(&self) -> usize {
        match self {
            DiracGraph::Form(w) => w.n(),
            DiracGraph::Bivector(b) => b.n(),
        }
    }

    /// The section of the graph over a vector field (form graph) or over a
    /// 1-form (bivector graph).
    pub fn lift(&self, s: &CourantSection) -> CourantSection {
        match self {
            DiracGraph::Form(w) => CourantSection {
                vf: s.vf.clone(),
                form: omega_map(w, &s.vf),
            },
            DiracGraph::Bivector(b) => CourantSection {
                vf: b.sharp(&s.form).expect("1-form"),
                form: s.form.clone(),
            },
        }
    }

    /// The base coordinate of a section: `X` for a form graph, `ξ` for a
    /// bivector graph.
    pub fn base(&self, s: &CourantSection) -> CourantSection {
        match self {
            DiracGraph::Form(_) => CourantSection::vector(s.vf.clone()),
            DiracGraph::Bivector(_) => CourantSection {
                vf: PolyVectorField::zero(s.n()),
                form: s.form.clone(),
            },
        }
    }

    pub fn contains(&self, s: &CourantSection) -> bool {
        self.lift(&self.base(s)) == *s
    }
}

/// One enumerated section with its position and label.
#[derive(Clone, Debug)]
pub struct Probe {
    pub index: usize,
    pub label: String,
    pub section: CourantSection,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SectionKind {
    Vector,
    Form,
    All,
}

/// The sections `x^α ∂ᵢ` and then `x^α dxⁱ` for `|α| ≤ D`, in graded
/// monomial order and then by `i`.
#[derive(Clone, Debug)]
pub struct TestFamily {
    n: usize,
    max_degree: u32,
    probes: Vec<Probe>,
    vector_count: usize,
}

fn monomial_label(m: &Monomial) -> String {
    let p = Poly::monomial(m.nvars(), m.clone(), crate::poly::rational::one());
    if m.degree() == 0 {
        String::new()
    } else {
        format!("{p}*")
    }
}

impl TestFamily {
    pub fn new(n: usize, max_degree: u32) -> Self {
        let monomials = Monomial::all_up_to(n, max_degree);
        let mut probes = Vec::new();
        for m in &monomials {
            let f = Poly::monomial(n, m.clone(), crate::poly::rational::one());
            for i in 0..n {
                probes.push(Probe {
                    index: probes.len(),
                    label: format!("{}∂{}", monomial_label(m), i + 1),
                    section: CourantSection::vector(PolyVectorField::coordinate(n, i).mul_fn(&f)),
                });
            }
        }
        let vector_count = probes.len();
        for m in &monomials {
            let f = Poly::monomial(n, m.clone(), crate::poly::rational::one());
            for i in 0..n {
                probes.push(Probe {
                    index: probes.len(),
                    label: format!("{}dx{}", monomial_label(m), i + 1),
                    section: CourantSection::form(PolyForm::dx(n, i).mul_fn(&f)).expect("1-form"),
                });
            }
        }
        TestFamily {
            n,
            max_degree,
            probes,
            vector_count,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn len(&self) -> usize {
        self.probes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probes.is_empty()
    }

    pub fn probes(&self, kind: SectionKind) -> &[Probe] {
        match kind {
            SectionKind::Vector => &self.probes[..self.vector_count],
            SectionKind::Form => &self.probes[self.vector_count..],
            SectionKind::All => &self.probes,
        }
    }

    pub fn sections(&self) -> Vec<CourantSection> {
        self.probes.iter().map(|p| p.section.clone()).collect()
    }
}

/// The family's vector fields lifted to `X + ΩX`, or its 1-forms lifted to
/// `Λξ + ξ`.
pub fn dirac_graph_sections(l: &DiracGraph, family: &TestFamily) -> Result<Vec<CourantSection>> {
    Error::check_dim(family.n(), l.n())?;
    Ok(graph_probes(l, family).into_iter().map(|p| p.section).collect())
}

pub(crate) fn graph_probes(l: &DiracGraph, family: &TestFamily) -> Vec<Probe> {
    let kind = match l {
        DiracGraph::Form(_) => SectionKind::Vector,
        DiracGraph::Bivector(_) => SectionKind::Form,
    };
    family
        .probes(kind)
        .iter()
        .map(|p| {
            let section = l.lift(&p.section);
            Probe {
                index: p.index,
                label: format!("lift({})", p.label),
                section,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn p(s: &str) -> Poly {
        Poly::parse(s, 2).unwrap()
    }

    #[test]
    fn product_examples() {
        let dx = CourantSection::vector(PolyVectorField::coordinate(2, 0));
        let xdx = CourantSection::form(PolyForm::dx(2, 0).mul_fn(&p("x1"))).unwrap();
        let r = courant_product(&dx, &xdx).unwrap();
        assert_eq!(r, CourantSection::form(PolyForm::dx(2, 0)).unwrap());
        let eta = CourantSection::form(PolyForm::dx(2, 1).mul_fn(&p("x1^2"))).unwrap();
        assert!(courant_product(&xdx, &eta).unwrap().is_zero());
    }

    #[test]
    fn self_product_is_exact() {
        let s = CourantSection::new(
            PolyVectorField::parse(&["x2", "x1^2"]).unwrap(),
            PolyForm::parse_one_form(&["x1*x2", "3"]).unwrap(),
        )
        .unwrap();
        let ss = courant_product(&s, &s).unwrap();
        assert!(ss.vf.is_zero());
        let pair = crate::cartan::pairing(&s.vf, &s.form).unwrap();
        assert_eq!(ss.form, exterior_derivative(&PolyForm::function(pair)));
    }

    #[test]
    fn deformed_trivial_cases() {
        let fam = TestFamily::new(2, 1);
        let secs = fam.sections();
        for s in &secs {
            for t in &secs {
                let base = courant_product(s, t).unwrap();
                assert_eq!(deformed_product(s, t, &CourantTensor::identity(2)).unwrap(), base);
                assert!(deformed_product(s, t, &CourantTensor::zero(2)).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn family_order_and_size() {
        let fam = TestFamily::new(2, 2);
        assert_eq!(fam.len(), 24);
        assert_eq!(fam.probes(SectionKind::Vector).len(), 12);
        assert_eq!(fam.probes(SectionKind::All)[0].label, "∂1");
        assert_eq!(fam.probes(SectionKind::Form)[0].label, "dx1");
    }

    #[test]
    fn graph_of_dxdy() {
        let omega = PolyForm::from_components(2, 2, [(vec![0, 1], Poly::one(2))]).unwrap();
        let fam = TestFamily::new(2, 0);
        let secs = dirac_graph_sections(&DiracGraph::Form(omega), &fam).unwrap();
        assert_eq!(secs[0].vf, PolyVectorField::coordinate(2, 0));
        assert_eq!(secs[0].form, PolyForm::dx(2, 1));
        let zero = dirac_graph_sections(&DiracGraph::Form(PolyForm::zero(2, 2)), &fam).unwrap();
        assert!(zero.iter().all(|s| s.form.is_zero()));
        let none = dirac_graph_sections(&DiracGraph::Bivector(PolyBivector::zero(2)), &fam).unwrap();
        assert!(none.iter().all(|s| s.vf.is_zero()));
    }

    #[test]
    fn bialgebroid_shape_round_trip() {
        let n0 = PolyOneOne::parse(&[&["x1", "1"], &["0", "2"]]).unwrap();
        let t = CourantTensor::bialgebroid_shape(&int(3), &n0, &PolyBivector::zero(2), &PolyForm::zero(2, 2)).unwrap();
        let (l, back) = t.read_bialgebroid_shape().unwrap();
        assert_eq!(l, int(3));
        assert_eq!(back, n0);
    }
}
