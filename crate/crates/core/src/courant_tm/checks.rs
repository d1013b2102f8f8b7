//! Theorem regressions and structure checks on `TM ⊕ T*M`.

use std::fmt::Display;

use super::{
    graph_probes, omega_map, product_unchecked, CourantSection, CourantTensor, DiracGraph, Probe,
    SectionKind, StandardCourant, TestFamily,
};
use crate::algebra::product::{torsion, Contracted, Element, Product};
use crate::cartan::{
    d_n0, exterior_derivative, interior_product, is_poisson, lie_bracket, lie_derivative,
    nijenhuis_torsion_vf, pairing, PolyBivector, PolyForm, PolyOneOne, PolyVectorField,
};
use crate::error::{Error, Result};
use crate::report::{cross_checked, first_witness, CheckReport, StagedCheck, Witness};

type Outcome = Option<(String, String)>;

fn differ<T: PartialEq + Display>(lhs: T, rhs: T) -> Outcome {
    (lhs != rhs).then(|| (lhs.to_string(), rhs.to_string()))
}

fn nonzero<T: Display>(v: T, is_zero: bool) -> Outcome {
    (!is_zero).then(|| (v.to_string(), "0".into()))
}

/// Runs `f` on every pair from `a × b` and reports the first failure in
/// enumeration order.
fn sweep_pairs<F>(a: &[Probe], b: &[Probe], check: &str, identity: &str, f: F) -> CheckReport
where
    F: Fn(&CourantSection, &CourantSection) -> Outcome + Sync + Send,
{
    let w = first_witness(a.len() * b.len(), |t| {
        let (p, q) = (&a[t / b.len()], &b[t % b.len()]);
        f(&p.section, &q.section).map(|(lhs, rhs)| {
            Witness::new(identity, vec![p.index, q.index], vec![p.label.clone(), q.label.clone()], lhs, rhs)
        })
    });
    CheckReport::from_witness(check, w, format!("{check} on {} section pairs", a.len() * b.len()))
}

fn vec_sec(x: &PolyVectorField) -> CourantSection {
    CourantSection::vector(x.clone())
}

fn form_sec(w: &PolyForm) -> CourantSection {
    CourantSection::form(w.clone()).expect("1-form")
}

fn coordinate_forms(n: usize) -> Vec<PolyForm> {
    (0..n).map(|i| PolyForm::dx(n, i)).collect()
}

/// `[X,Y]_{N0} = [N0X,Y] + [X,N0Y] − N0[X,Y]`.
fn bracket_n0(n0: &PolyOneOne, x: &PolyVectorField, y: &PolyVectorField) -> PolyVectorField {
    let br = |a: &PolyVectorField, b: &PolyVectorField| lie_bracket(a, b).expect("same space");
    br(&n0.apply_unchecked(x), y)
        .add(&br(x, &n0.apply_unchecked(y)))
        .sub(&n0.apply_unchecked(&br(x, y)))
}

/// `L^{N0}_Xη`, from `⟨L^{N0}_Xη, Y⟩ = (N0X)⟨η,Y⟩ − ⟨η,[X,Y]_{N0}⟩` on
/// coordinate fields.
fn lie_n0(n0: &PolyOneOne, x: &PolyVectorField, eta: &PolyForm) -> PolyForm {
    let n = x.n();
    let nx = n0.apply_unchecked(x);
    PolyForm::one_form(
        (0..n)
            .map(|j| {
                let dj = PolyVectorField::coordinate(n, j);
                nx.apply(&eta.component(&[j])) - pairing(&bracket_n0(n0, x, &dj), eta).expect("1-form")
            })
            .collect(),
    )
    .expect("components on the same space")
}

fn contract_form(y: &PolyVectorField, w: &PolyForm) -> PolyForm {
    interior_product(y, w).expect("positive degree")
}

/// `[X,Y]_{N0} + (L^{N0}_Xη − i_Y d^{N0}ξ)` from the Cartan calculus alone.
fn theorem2_rhs(n0: &PolyOneOne, s: &CourantSection, t: &CourantSection) -> CourantSection {
    let d_xi = d_n0(n0, &s.form).expect("same space");
    CourantSection {
        vf: bracket_n0(n0, &s.vf, &t.vf),
        form: lie_n0(n0, &s.vf, &t.form).sub(&contract_form(&t.vf, &d_xi)),
    }
}

/// The contracted product for `N = diag(N0, −ᵗN0)` agrees with the bracket
/// of the contracted Lie algebroid on every pair of the family.
pub fn verify_theorem2(n0: &PolyOneOne, family: &TestFamily) -> Result<CheckReport> {
    Error::check_dim(family.n(), n0.n())?;
    let n = CourantTensor::diagonal(n0);
    let deformed = Contracted::new(&StandardCourant, &n);
    let all = family.probes(SectionKind::All);
    Ok(sweep_pairs(
        all,
        all,
        "theorem2",
        "s∘_N t = [X,Y]_N0 + (L^N0_X η − i_Y d^N0 ξ)",
        |s, t| differ(deformed.mul(s, t), theorem2_rhs(n0, s, t)),
    ))
}

fn torsion_vf_report(n0: &PolyOneOne, family: &TestFamily, check: &str) -> CheckReport {
    let v = family.probes(SectionKind::Vector);
    sweep_pairs(v, v, check, "T_N0(X,Y) = 0", |s, t| {
        let tor = nijenhuis_torsion_vf(n0, &s.vf, &t.vf).expect("same space");
        let z = tor.is_zero();
        nonzero(tor, z)
    })
}

fn square_scalar_report(n0: &PolyOneOne) -> CheckReport {
    let sq = n0.compose(n0).expect("square");
    match sq.as_scalar() {
        Some(l) => CheckReport::pass("N0² = λI", format!("N0² = λI with λ = {l}")),
        None => CheckReport::fail(
            "N0² = λI",
            Witness::new("N0² = λI", vec![], vec![], &sq, "λI"),
            format!("N0² = {sq} is not a constant multiple of I"),
        ),
    }
}

/// For a Nijenhuis `N0`, whether `N = diag(N0, −ᵗN0)` has vanishing torsion
/// for the Courant product, cross-checked against the split identities on
/// mixed pairs and against the matrix test `N0² = λI`.
pub fn courant_nijenhuis_test(n0: &PolyOneOne, family: &TestFamily) -> Result<CheckReport> {
    Error::check_dim(family.n(), n0.n())?;
    let pre = torsion_vf_report(n0, family, "N0 Nijenhuis");
    if !pre.passed() {
        return Err(Error::Precondition(format!(
            "N0 is not a Nijenhuis tensor on the family: {}",
            pre.witness.map(|w| format!("T_N0({}) = {}", w.inputs.join(", "), w.lhs)).unwrap_or_default()
        )));
    }
    let n = CourantTensor::diagonal(n0);
    let all = family.probes(SectionKind::All);
    let primary = sweep_pairs(all, all, "courant-nijenhuis", "T_N(s,t) = 0", |s, t| {
        let tor = torsion(&StandardCourant, &n, s, t);
        let z = tor.is_zero();
        nonzero(tor, z)
    });

    let v = family.probes(SectionKind::Vector);
    let f = family.probes(SectionKind::Form);
    let tn = |w: &PolyForm| n0.transpose_apply(w).expect("1-form");
    let mut staged = StagedCheck::new("courant-nijenhuis split identities");
    let h1 = sweep_pairs(v, f, "h1", "ᵗN0 L^N0_X η = L_N0X(ᵗN0 η)", |s, t| {
        let lhs = tn(&lie_n0(n0, &s.vf, &t.form));
        let rhs = lie_derivative(&n0.apply_unchecked(&s.vf), &tn(&t.form)).expect("same space");
        differ(lhs, rhs)
    });
    let h2 = sweep_pairs(f, v, "h2", "ᵗN0 i_Y d^N0 ξ = i_N0Y d(ᵗN0 ξ)", |s, t| {
        let lhs = tn(&contract_form(&t.vf, &d_n0(n0, &s.form).expect("same space")));
        let rhs = contract_form(&n0.apply_unchecked(&t.vf), &exterior_derivative(&tn(&s.form)));
        differ(lhs, rhs)
    });
    let split = staged
        .stage(&h1)
        .or_else(|| staged.stage(&h2))
        .unwrap_or_else(|| staged.finish());
    let matrix = square_scalar_report(n0);
    let mut out = cross_checked(cross_checked(primary, &split), &matrix);
    out.certificate = format!("{}; {}", out.certificate, matrix.certificate);
    Ok(out)
}

/// `K[X,Y] = [X,KY]` on the family, and then `K = λI`.
pub fn verify_lemma2(k: &PolyOneOne, family: &TestFamily) -> Result<CheckReport> {
    Error::check_dim(family.n(), k.n())?;
    let v = family.probes(SectionKind::Vector);
    let commutes = sweep_pairs(v, v, "lemma2", "K[X,Y] = [X,KY]", |s, t| {
        let lhs = k.apply_unchecked(&lie_bracket(&s.vf, &t.vf).expect("same space"));
        let rhs = lie_bracket(&s.vf, &k.apply_unchecked(&t.vf)).expect("same space");
        differ(lhs, rhs)
    });
    if !commutes.passed() {
        return Ok(commutes);
    }
    Ok(match k.as_scalar() {
        Some(l) => CheckReport::pass("lemma2", format!("{}; K = λI with λ = {l}", commutes.certificate)),
        None => CheckReport::fail(
            "lemma2",
            Witness::new("K = λI", vec![], vec![], k, "λI"),
            format!("{}; but K is not a constant multiple of I", commutes.certificate),
        ),
    })
}

/// `d(A)(X,Y,·) = AX∘Y + X∘AY − A[X,Y]` for a map `A : TM → T*M`, whether
/// or not `A` is skew.
fn d_map<A>(a: &A, x: &PolyVectorField, y: &PolyVectorField) -> PolyForm
where
    A: Fn(&PolyVectorField) -> PolyForm,
{
    let ax_y = product_unchecked(&form_sec(&a(x)), &vec_sec(y)).form;
    let x_ay = product_unchecked(&vec_sec(x), &form_sec(&a(y))).form;
    ax_y.add(&x_ay).sub(&a(&lie_bracket(x, y).expect("same space")))
}

fn closed_report<A>(family: &TestFamily, check: &str, identity: &str, a: A) -> CheckReport
where
    A: Fn(&PolyVectorField) -> PolyForm + Sync + Send,
{
    let v = family.probes(SectionKind::Vector);
    sweep_pairs(v, v, check, identity, |s, t| {
        let d = d_map(&a, &s.vf, &t.vf);
        let z = d.is_zero();
        nonzero(d, z)
    })
}

/// Skewness of `A : TM → T*M`: `⟨A∂ₖ, ∂ⱼ⟩ + ⟨A∂ⱼ, ∂ₖ⟩ = 0`.
fn skew_map_report<A>(n: usize, check: &str, a: A) -> CheckReport
where
    A: Fn(&PolyVectorField) -> PolyForm + Sync + Send,
{
    let entry = |k: usize, j: usize| {
        pairing(&PolyVectorField::coordinate(n, j), &a(&PolyVectorField::coordinate(n, k))).expect("1-form")
    };
    let w = first_witness(n * n, |t| {
        let (k, j) = (t / n, t % n);
        if j < k {
            return None;
        }
        let (kj, jk) = (entry(k, j), entry(j, k));
        (kj != -jk.clone()).then(|| {
            Witness::new(
                format!("{check}: A(∂k,∂j) = −A(∂j,∂k)"),
                vec![k, j],
                vec![format!("∂{}", k + 1), format!("∂{}", j + 1)],
                kj,
                -jk,
            )
        })
    });
    CheckReport::from_witness(check, w, format!("{check} on {} coordinate pairs", n * n))
}

fn omega_n0_map<'a>(omega: &'a PolyForm, n0: &'a PolyOneOne) -> impl Fn(&PolyVectorField) -> PolyForm + Sync + Send + 'a {
    move |x| omega_map(omega, &n0.apply_unchecked(x))
}

/// Definition semantics on a graph: `L` Dirac (isotropic and closed under
/// `∘`) and `∘_N` closed and skew on `L` with `T_N = 0` on `L`.
pub fn dirac_nijenhuis_on_graph(l: &DiracGraph, n: &CourantTensor, family: &TestFamily) -> Result<CheckReport> {
    Error::check_dim(family.n(), l.n())?;
    Error::check_dim(family.n(), n.n())?;
    let g = graph_probes(l, family);
    let deformed = Contracted::new(&StandardCourant, n);
    let mut staged = StagedCheck::new("dirac-nijenhuis on graph");
    let stages: [Box<dyn Fn() -> CheckReport>; 5] = [
        Box::new(|| {
            sweep_pairs(&g, &g, "isotropic", "⟨s,t⟩ = 0", |s, t| {
                let p = s.pairing(t).expect("same space");
                let z = p.is_zero();
                nonzero(p, z)
            })
        }),
        Box::new(|| {
            sweep_pairs(&g, &g, "closed", "s∘t ∈ L", |s, t| {
                let p = product_unchecked(s, t);
                (!l.contains(&p)).then(|| (p.to_string(), l.lift(&l.base(&p)).to_string()))
            })
        }),
        Box::new(|| {
            sweep_pairs(&g, &g, "∘_N closed on L", "s∘_N t ∈ L", |s, t| {
                let p = deformed.mul(s, t);
                (!l.contains(&p)).then(|| (p.to_string(), l.lift(&l.base(&p)).to_string()))
            })
        }),
        Box::new(|| {
            sweep_pairs(&g, &g, "∘_N skew on L", "s∘_N t = −(t∘_N s)", |s, t| {
                let a = deformed.mul(s, t);
                let b = deformed.mul(t, s);
                let sum = a.add(&b);
                let z = sum.is_zero();
                nonzero(sum, z)
            })
        }),
        Box::new(|| {
            sweep_pairs(&g, &g, "T_N = 0 on L", "T_N(s,t) = 0", |s, t| {
                let tor = torsion(&StandardCourant, n, s, t);
                let z = tor.is_zero();
                nonzero(tor, z)
            })
        }),
    ];
    for stage in &stages {
        if let Some(fail) = staged.stage(&stage()) {
            return Ok(fail);
        }
    }
    Ok(staged.finish())
}

/// Isotropy and closure of a graph under the Courant product; for a
/// bivector graph also that the induced bracket of 1-forms is the Koszul
/// bracket.
pub fn check_dirac_graph(l: &DiracGraph, family: &TestFamily) -> Result<CheckReport> {
    Error::check_dim(family.n(), l.n())?;
    let g = graph_probes(l, family);
    let mut staged = StagedCheck::new("dirac graph");
    let isotropic = sweep_pairs(&g, &g, "isotropic", "⟨s,t⟩ = 0", |s, t| {
        let p = s.pairing(t).expect("same space");
        let z = p.is_zero();
        nonzero(p, z)
    });
    if let Some(fail) = staged.stage(&isotropic) {
        return Ok(fail);
    }
    let closed = sweep_pairs(&g, &g, "closed", "s∘t ∈ L", |s, t| {
        let p = product_unchecked(s, t);
        (!l.contains(&p)).then(|| (p.to_string(), l.lift(&l.base(&p)).to_string()))
    });
    if let Some(fail) = staged.stage(&closed) {
        return Ok(fail);
    }
    let extra = match l {
        DiracGraph::Form(omega) => closed_report(
            family,
            "dΩ = 0",
            "X∘ΩY + ΩX∘Y − Ω[X,Y] = 0",
            |x| omega_map(omega, x),
        ),
        DiracGraph::Bivector(lambda) => sweep_pairs(&g, &g, "induced bracket", "form part of s∘t = [ξ,η]^Λ", |s, t| {
            differ(product_unchecked(s, t).form, koszul_bracket(lambda, &s.form, &t.form).expect("same space"))
        }),
    };
    Ok(staged.stage(&extra).unwrap_or_else(|| staged.finish()))
}

/// Both verdict paths: the condition list (`dΩ = 0`, `ΩN0` skew,
/// `d(ΩN0) = 0`, `T_N0 = 0`) and the Dirac-Nijenhuis semantics of the graph
/// of `Ω` with `N(X+ξ) = N0X`. They must agree.
pub fn check_presymplectic_nijenhuis(omega: &PolyForm, n0: &PolyOneOne, family: &TestFamily) -> Result<CheckReport> {
    Error::check_dim(family.n(), omega.n())?;
    Error::check_dim(family.n(), n0.n())?;
    Error::check_dim(2, omega.degree())?;
    let n = family.n();
    let mut staged = StagedCheck::new("presymplectic-nijenhuis");
    let stages: [Box<dyn Fn() -> CheckReport>; 4] = [
        Box::new(|| closed_report(family, "dΩ = 0", "X∘ΩY + ΩX∘Y − Ω[X,Y] = 0", |x| omega_map(omega, x))),
        Box::new(|| skew_map_report(n, "ΩN0 skew", omega_n0_map(omega, n0))),
        Box::new(|| closed_report(family, "d(ΩN0) = 0", "ΩN0X∘Y + X∘ΩN0Y − ΩN0[X,Y] = 0", omega_n0_map(omega, n0))),
        Box::new(|| torsion_vf_report(n0, family, "T_N0 = 0")),
    ];
    let mut primary = None;
    for stage in &stages {
        if let Some(fail) = staged.stage(&stage()) {
            primary = Some(fail);
            break;
        }
    }
    let primary = primary.unwrap_or_else(|| staged.finish());
    let semantic = dirac_nijenhuis_on_graph(&DiracGraph::Form(omega.clone()), &CourantTensor::tangent(n0), family)?;
    Ok(cross_checked(primary, &semantic))
}

/// `N0 = ΛΩ` as a (1,1)-tensor: `N0X = Λ(ΩX)`.
pub fn lambda_omega(lambda: &PolyBivector, omega: &PolyForm) -> Result<PolyOneOne> {
    let n = lambda.n();
    Error::check_dim(n, omega.n())?;
    let cols: Vec<PolyVectorField> = (0..n)
        .map(|k| lambda.sharp(&omega_map(omega, &PolyVectorField::coordinate(n, k))))
        .collect::<Result<_>>()?;
    Ok(PolyOneOne::from_fn(n, |j, k| cols[k].component(j).clone()))
}

/// With `N0 = ΛΩ`: `N0` Nijenhuis, `ΩΛΩ` skew, and `d(ΩΛΩ) = 0`. When `Ω` is
/// closed the verdict is cross-checked against the Dirac-Nijenhuis
/// semantics of the graph of `Ω` with `N(X+ξ) = Λξ`.
pub fn check_lambda_omega(omega: &PolyForm, lambda: &PolyBivector, family: &TestFamily) -> Result<CheckReport> {
    Error::check_dim(family.n(), omega.n())?;
    Error::check_dim(family.n(), lambda.n())?;
    Error::check_dim(2, omega.degree())?;
    let n = family.n();
    let n0 = lambda_omega(lambda, omega)?;
    let mut staged = StagedCheck::new("lambda-omega");
    let stages: [Box<dyn Fn() -> CheckReport>; 3] = [
        Box::new(|| torsion_vf_report(&n0, family, "ΛΩ Nijenhuis")),
        Box::new(|| skew_map_report(n, "ΩΛΩ skew", omega_n0_map(omega, &n0))),
        Box::new(|| closed_report(family, "d(ΩΛΩ) = 0", "ΩN0X∘Y + X∘ΩN0Y − ΩN0[X,Y] = 0", omega_n0_map(omega, &n0))),
    ];
    let mut primary = None;
    for stage in &stages {
        if let Some(fail) = staged.stage(&stage()) {
            primary = Some(fail);
            break;
        }
    }
    let mut primary = primary.unwrap_or_else(|| staged.finish());
    primary.certificate = format!("ΛΩ = {n0}; {}", primary.certificate);
    let omega_closed = closed_report(family, "dΩ = 0", "dΩ = 0", |x| omega_map(omega, x));
    if !omega_closed.passed() {
        primary.certificate.push_str("; Ω not closed, no Dirac cross-check");
        return Ok(primary);
    }
    let semantic = dirac_nijenhuis_on_graph(
        &DiracGraph::Form(omega.clone()),
        &CourantTensor::lambda_only(lambda),
        family,
    )?;
    Ok(cross_checked(primary, &semantic))
}

/// `[ξ,η]^A = Aξ∘η + ξ∘Aη` for a map `A : T*M → TM`.
fn upper<A>(a: &A, xi: &PolyForm, eta: &PolyForm) -> PolyForm
where
    A: Fn(&PolyForm) -> PolyVectorField,
{
    let l = product_unchecked(&vec_sec(&a(xi)), &form_sec(eta)).form;
    let r = product_unchecked(&form_sec(xi), &vec_sec(&a(eta))).form;
    l.add(&r)
}

/// `[ξ,η]^Λ = Λξ∘η + ξ∘Λη`.
pub fn lambda_bracket(lambda: &PolyBivector, xi: &PolyForm, eta: &PolyForm) -> Result<PolyForm> {
    Error::check_dim(lambda.n(), xi.n())?;
    Error::check_dim(lambda.n(), eta.n())?;
    Ok(upper(&|w: &PolyForm| lambda.sharp(w).expect("1-form"), xi, eta))
}

/// `L_{Λξ}η − L_{Λη}ξ − dΛ(ξ,η)`, computed in the Cartan calculus only.
pub fn koszul_bracket(lambda: &PolyBivector, xi: &PolyForm, eta: &PolyForm) -> Result<PolyForm> {
    let a = lie_derivative(&lambda.sharp(xi)?, eta)?;
    let b = lie_derivative(&lambda.sharp(eta)?, xi)?;
    let c = exterior_derivative(&PolyForm::function(lambda.eval(xi, eta)?));
    Ok(a.sub(&b).sub(&c))
}

/// `[ξ,η]_M = [Mξ,η] + [ξ,Mη] − M[ξ,η]` for a bracket of 1-forms.
fn deform_forms<B, M>(br: &B, m: &M, xi: &PolyForm, eta: &PolyForm) -> PolyForm
where
    B: Fn(&PolyForm, &PolyForm) -> PolyForm,
    M: Fn(&PolyForm) -> PolyForm,
{
    br(&m(xi), eta).add(&br(xi, &m(eta))).sub(&m(&br(xi, eta)))
}

/// The weak (three compatibility conditions) and strong Poisson-Nijenhuis
/// verdicts for `(Λ, N0)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PoissonNijenhuisReport {
    pub weak: CheckReport,
    pub strong: CheckReport,
}

impl PoissonNijenhuisReport {
    /// Weak holds but strong does not.
    pub fn separates(&self) -> bool {
        self.weak.passed() && !self.strong.passed()
    }
}

/// Requires `Λ` Poisson. Weak: `N0Λ = ΛᵗN0`, `Λ([ξ,η]^Λ_ᵗN0 − [ξ,η]^{N0Λ}) = 0`,
/// and `T_N0` vanishing on the image of `Λ`; cross-checked against the
/// Dirac-Nijenhuis semantics of the graph of `Λ` with `N(X+ξ) = N0X`.
/// Strong: `N0Λ = ΛᵗN0`, `N0` Nijenhuis, and `[ξ,η]^Λ_ᵗN0 = [ξ,η]^{N0Λ}`.
pub fn check_poisson_nijenhuis_weak(
    lambda: &PolyBivector,
    n0: &PolyOneOne,
    family: &TestFamily,
) -> Result<PoissonNijenhuisReport> {
    Error::check_dim(family.n(), lambda.n())?;
    Error::check_dim(family.n(), n0.n())?;
    let poisson = is_poisson(lambda);
    if !poisson.passed() {
        return Err(Error::Precondition(format!(
            "Λ is not Poisson: {}",
            poisson.witness.map(|w| format!("Jacobiator on ({}) = {}", w.inputs.join(", "), w.lhs)).unwrap_or_default()
        )));
    }
    let n = family.n();
    let sharp = |w: &PolyForm| lambda.sharp(w).expect("1-form");
    let tn = |w: &PolyForm| n0.transpose_apply(w).expect("1-form");
    let n0_lambda = |w: &PolyForm| n0.apply_unchecked(&sharp(w));
    let lam_br = |a: &PolyForm, b: &PolyForm| upper(&sharp, a, b);
    let defect = |a: &PolyForm, b: &PolyForm| deform_forms(&lam_br, &tn, a, b).sub(&upper(&n0_lambda, a, b));

    let dx = coordinate_forms(n);
    let pn0 = {
        let w = first_witness(n, |k| {
            differ(n0_lambda(&dx[k]), sharp(&tn(&dx[k]))).map(|(l, r)| {
                Witness::new("N0Λ = ΛᵗN0", vec![k], vec![format!("dx{}", k + 1)], l, r)
            })
        });
        CheckReport::from_witness("PN0", w, "N0Λ = ΛᵗN0 on coordinate 1-forms")
    };
    let f = family.probes(SectionKind::Form);
    let pn = || {
        sweep_pairs(f, f, "PN", "Λ([ξ,η]^Λ_ᵗN0 − [ξ,η]^N0Λ) = 0", |s, t| {
            let v = sharp(&defect(&s.form, &t.form));
            let z = v.is_zero();
            nonzero(v, z)
        })
    };
    let np = || {
        sweep_pairs(f, f, "NP", "N0[Λξ,Λη]_N0 = [N0Λξ,N0Λη]", |s, t| {
            let tor = nijenhuis_torsion_vf(n0, &sharp(&s.form), &sharp(&t.form)).expect("same space");
            let z = tor.is_zero();
            nonzero(tor, z)
        })
    };
    let strong_pn = || {
        sweep_pairs(f, f, "strong PN", "[ξ,η]^Λ_ᵗN0 − [ξ,η]^N0Λ = 0", |s, t| {
            let v = defect(&s.form, &t.form);
            let z = v.is_zero();
            nonzero(v, z)
        })
    };

    let mut weak_staged = StagedCheck::new("poisson-nijenhuis weak");
    let weak = weak_staged
        .stage(&pn0)
        .or_else(|| weak_staged.stage(&pn()))
        .or_else(|| weak_staged.stage(&np()))
        .unwrap_or_else(|| weak_staged.finish());
    let semantic = dirac_nijenhuis_on_graph(&DiracGraph::Bivector(lambda.clone()), &CourantTensor::tangent(n0), family)?;
    let weak = cross_checked(weak, &semantic);

    let mut strong_staged = StagedCheck::new("poisson-nijenhuis strong");
    let strong = strong_staged
        .stage(&pn0)
        .or_else(|| strong_staged.stage(&torsion_vf_report(n0, family, "N0 Nijenhuis")))
        .or_else(|| strong_staged.stage(&strong_pn()))
        .unwrap_or_else(|| strong_staged.finish());
    Ok(PoissonNijenhuisReport { weak, strong })
}

/// For `N` of the shape `[[λ/2 I + N0, Λ], [Ω, λ/2 I − ᵗN0]]`: `Ω` closed,
/// `T_N0 = 0`, `ΩN0` skew with `d(ΩN0) = 0`,
/// `[η,ξ]^Λ_ᵗN0 − [η,ξ]^{ΛᵗN0} = 0`, and `[Λη,Λξ] − Λ[η,ξ]^Λ = 0`.
/// Cross-checked against the direct definition: `∘_N` closed on `TM` and
/// on `T*M` with `T_N` vanishing on each.
pub fn check_trivial_bialgebroid_nijenhuis(nt: &CourantTensor, family: &TestFamily) -> Result<CheckReport> {
    Error::check_dim(family.n(), nt.n())?;
    let Some((lambda_scalar, n0)) = nt.read_bialgebroid_shape() else {
        return Err(Error::Precondition(
            "tensor is not of the shape [[λ/2 I + N0, Λ], [Ω, λ/2 I − ᵗN0]]: N0-block + N1-block is not λI".into(),
        ));
    };
    let n = family.n();
    let omega = &nt.omega;
    let lambda = &nt.lambda;
    let sharp = |w: &PolyForm| lambda.sharp(w).expect("1-form");
    let tn = |w: &PolyForm| n0.transpose_apply(w).expect("1-form");
    let lambda_tn = |w: &PolyForm| sharp(&tn(w));
    let lam_br = |a: &PolyForm, b: &PolyForm| upper(&sharp, a, b);
    let f = family.probes(SectionKind::Form);

    let mut staged = StagedCheck::new("trivial-bialgebroid-nijenhuis");
    let stages: [Box<dyn Fn() -> CheckReport>; 6] = [
        Box::new(|| closed_report(family, "Ω closed", "X∘ΩY + ΩX∘Y − Ω[X,Y] = 0", |x| omega_map(omega, x))),
        Box::new(|| torsion_vf_report(&n0, family, "w1")),
        Box::new(|| skew_map_report(n, "w2 ΩN0 skew", omega_n0_map(omega, &n0))),
        Box::new(|| closed_report(family, "w2", "ΩN0X∘Y + X∘ΩN0Y − ΩN0[X,Y] = 0", omega_n0_map(omega, &n0))),
        Box::new(|| {
            sweep_pairs(f, f, "w3", "[η,ξ]^Λ_ᵗN0 − [η,ξ]^ΛᵗN0 = 0", |s, t| {
                let v = deform_forms(&lam_br, &tn, &s.form, &t.form).sub(&upper(&lambda_tn, &s.form, &t.form));
                let z = v.is_zero();
                nonzero(v, z)
            })
        }),
        Box::new(|| {
            sweep_pairs(f, f, "w4", "[Λη,Λξ] − Λ([η,ξ]^Λ) = 0", |s, t| {
                let v = lie_bracket(&sharp(&s.form), &sharp(&t.form))
                    .expect("same space")
                    .sub(&sharp(&lam_br(&s.form, &t.form)));
                let z = v.is_zero();
                nonzero(v, z)
            })
        }),
    ];
    let mut primary = None;
    for stage in &stages {
        if let Some(fail) = staged.stage(&stage()) {
            primary = Some(fail);
            break;
        }
    }
    let mut primary = primary.unwrap_or_else(|| staged.finish());
    primary.certificate = format!("λ = {lambda_scalar}; {}", primary.certificate);
    let direct = bialgebroid_definition(nt, family);
    Ok(cross_checked(primary, &direct))
}

/// `∘_N` closed on `TM` and on `T*M`, and `T_N` vanishing on each.
fn bialgebroid_definition(nt: &CourantTensor, family: &TestFamily) -> CheckReport {
    let deformed = Contracted::new(&StandardCourant, nt);
    let v = family.probes(SectionKind::Vector);
    let f = family.probes(SectionKind::Form);
    let mut staged = StagedCheck::new("bialgebroid-nijenhuis definition");
    let tor = |s: &CourantSection, t: &CourantSection| {
        let x = torsion(&StandardCourant, nt, s, t);
        let z = x.is_zero();
        nonzero(x, z)
    };
    let stages: [Box<dyn Fn() -> CheckReport>; 4] = [
        Box::new(|| {
            sweep_pairs(v, v, "TM closed", "form part of X∘_N Y = 0", |s, t| {
                let p = deformed.mul(s, t).form;
                let z = p.is_zero();
                nonzero(p, z)
            })
        }),
        Box::new(|| sweep_pairs(v, v, "T_N = 0 on TM", "T_N(X,Y) = 0", tor)),
        Box::new(|| {
            sweep_pairs(f, f, "T*M closed", "vector part of ξ∘_N η = 0", |s, t| {
                let p = deformed.mul(s, t).vf;
                let z = p.is_zero();
                nonzero(p, z)
            })
        }),
        Box::new(|| sweep_pairs(f, f, "T_N = 0 on T*M", "T_N(ξ,η) = 0", tor)),
    ];
    for stage in &stages {
        if let Some(fail) = staged.stage(&stage()) {
            return fail;
        }
    }
    staged.finish()
}
