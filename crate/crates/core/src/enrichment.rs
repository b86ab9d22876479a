//! Enrichments over a monoidal category, enriched functors, naturals and
//! monads, adjunction-mediated conversion to and from the strength
//! presentation.

use std::rc::Rc;

use crate::action::LeftAction;
use crate::core::{
    op_underlying, opposite_category, product_category, unpair_mor, validate_functor,
    Category, FunctorData, LawReport, Morphism, Obj,
};
use crate::error::{LabError, Result};
use crate::monoidal::{invert, MonoidalStructure};
use crate::strength::CtxFunctorData;
use crate::strongmonad::{mor_in_category, KleisliStrongMonad};

// ---------------------------------------------------------------------------
// adjunctions as explicit transposition data
// ---------------------------------------------------------------------------

type ObjFam = Rc<dyn Fn(&Obj, &Obj) -> Obj>;
type MorFam = Rc<dyn Fn(&Obj, &Morphism) -> Morphism>;
type PMorFam = Rc<dyn Fn(&Morphism, &Obj) -> Morphism>;
type TransFn = Rc<dyn Fn(&Obj, &Obj, &Obj, &Morphism) -> Result<Morphism>>;

/// A parametrized adjunction L_P ⊣ R_P, presented by explicit transposition
/// procedures. `fwd` takes f : L_P A → B to A → R_P B and `bwd` is its
/// inverse. Parameters P form a category, and both L and R are functorial
/// in P (covariantly for L, contravariantly for R).
#[derive(Clone)]
pub struct Adjunction {
    pub label: String,
    pub params: Category,
    pub a_cat: Category,
    pub b_cat: Category,
    left: ObjFam,
    left_mor: MorFam,
    left_pmor: PMorFam,
    right: ObjFam,
    right_mor: MorFam,
    right_pmor: PMorFam,
    fwd: TransFn,
    bwd: TransFn,
}

impl std::fmt::Debug for Adjunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Adjunction({})", self.label)
    }
}

impl Adjunction {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        label: impl Into<String>,
        params: Category,
        a_cat: Category,
        b_cat: Category,
        left: impl Fn(&Obj, &Obj) -> Obj + 'static,
        left_mor: impl Fn(&Obj, &Morphism) -> Morphism + 'static,
        left_pmor: impl Fn(&Morphism, &Obj) -> Morphism + 'static,
        right: impl Fn(&Obj, &Obj) -> Obj + 'static,
        right_mor: impl Fn(&Obj, &Morphism) -> Morphism + 'static,
        right_pmor: impl Fn(&Morphism, &Obj) -> Morphism + 'static,
        fwd: impl Fn(&Obj, &Obj, &Obj, &Morphism) -> Result<Morphism> + 'static,
        bwd: impl Fn(&Obj, &Obj, &Obj, &Morphism) -> Result<Morphism> + 'static,
    ) -> Adjunction {
        Adjunction {
            label: label.into(),
            params,
            a_cat,
            b_cat,
            left: Rc::new(left),
            left_mor: Rc::new(left_mor),
            left_pmor: Rc::new(left_pmor),
            right: Rc::new(right),
            right_mor: Rc::new(right_mor),
            right_pmor: Rc::new(right_pmor),
            fwd: Rc::new(fwd),
            bwd: Rc::new(bwd),
        }
    }
    pub fn left_obj(&self, p: &Obj, a: &Obj) -> Obj {
        (self.left)(p, a)
    }
    pub fn left_mor(&self, p: &Obj, u: &Morphism) -> Morphism {
        (self.left_mor)(p, u)
    }
    /// L_σ(A) : L_P A → L_{P′} A for σ : P → P′.
    pub fn left_pmor(&self, sigma: &Morphism, a: &Obj) -> Morphism {
        (self.left_pmor)(sigma, a)
    }
    pub fn right_obj(&self, p: &Obj, b: &Obj) -> Obj {
        (self.right)(p, b)
    }
    pub fn right_mor(&self, p: &Obj, w: &Morphism) -> Morphism {
        (self.right_mor)(p, w)
    }
    /// R_σ(B) : R_{P′} B → R_P B for σ : P → P′.
    pub fn right_pmor(&self, sigma: &Morphism, b: &Obj) -> Morphism {
        (self.right_pmor)(sigma, b)
    }
    /// Transpose f : L_P A → B to A → R_P B.
    pub fn fwd(&self, p: &Obj, a: &Obj, b: &Obj, f: &Morphism) -> Result<Morphism> {
        (self.fwd)(p, a, b, f)
    }
    /// Transpose g : A → R_P B back to L_P A → B.
    pub fn bwd(&self, p: &Obj, a: &Obj, b: &Obj, g: &Morphism) -> Result<Morphism> {
        (self.bwd)(p, a, b, g)
    }
    /// Counit component ev_{P,B} : L_P (R_P B) → B.
    pub fn ev(&self, p: &Obj, b: &Obj) -> Result<Morphism> {
        let rb = self.right_obj(p, b);
        let id = self.a_cat.identity(&rb);
        self.bwd(p, &rb, b, &id)
    }
    /// Unit component A → R_P (L_P A).
    pub fn unit(&self, p: &Obj, a: &Obj) -> Result<Morphism> {
        let la = self.left_obj(p, a);
        let id = self.b_cat.identity(&la);
        self.fwd(p, a, &la, &id)
    }
}

/// Check, on the probe window, that the transposes are mutually inverse
/// bijections and natural in all three variables.
pub fn validate_adjunction(adj: &Adjunction) -> Result<LawReport> {
    let mut rep = LawReport::default();
    for p in &adj.params.probe {
        for a in &adj.a_cat.probe {
            let la = adj.left_obj(p, a);
            for b in &adj.b_cat.probe {
                let rb = adj.right_obj(p, b);
                let hs = adj.b_cat.hom(&la, b)?;
                let ks = adj.a_cat.hom(a, &rb)?;
                if hs.len() != ks.len() {
                    rep.fail(
                        "adjunction-bijection",
                        format!(
                            "|hom(L_P A, B)| = {} but |hom(A, R_P B)| = {} at P={}, A={}, B={}",
                            hs.len(),
                            ks.len(),
                            p.id(),
                            a.id(),
                            b.id()
                        ),
                    );
                    continue;
                }
                for f in &hs {
                    let g = adj.fwd(p, a, b, f)?;
                    if !ks.contains(&g) {
                        rep.fail(
                            "adjunction-fwd-typing",
                            format!("transpose leaves hom(A, R_P B) at P={}, A={}, B={}", p.id(), a.id(), b.id()),
                        );
                        continue;
                    }
                    if adj.bwd(p, a, b, &g)? != *f {
                        rep.fail(
                            "adjunction-inverse",
                            format!("bwd∘fwd ≠ id at P={}, A={}, B={}", p.id(), a.id(), b.id()),
                        );
                    }
                }
                for g in &ks {
                    let f = adj.bwd(p, a, b, g)?;
                    if !hs.contains(&f) {
                        rep.fail(
                            "adjunction-bwd-typing",
                            format!("transpose leaves hom(L_P A, B) at P={}, A={}, B={}", p.id(), a.id(), b.id()),
                        );
                        continue;
                    }
                    if adj.fwd(p, a, b, &f)? != *g {
                        rep.fail(
                            "adjunction-inverse",
                            format!("fwd∘bwd ≠ id at P={}, A={}, B={}", p.id(), a.id(), b.id()),
                        );
                    }
                }
                // naturality in A
                for a2 in &adj.a_cat.probe {
                    for u in adj.a_cat.hom(a2, a)? {
                        let lu = adj.left_mor(p, &u);
                        for f in &hs {
                            let lhs =
                                adj.fwd(p, a2, b, &adj.b_cat.compose(f, &lu)?)?;
                            let rhs = adj.a_cat.compose(&adj.fwd(p, a, b, f)?, &u)?;
                            if lhs != rhs {
                                rep.fail(
                                    "adjunction-natural-a",
                                    format!("at P={}, A′={}→A={}, B={}", p.id(), a2.id(), a.id(), b.id()),
                                );
                            }
                        }
                    }
                }
                // naturality in B
                for b2 in &adj.b_cat.probe {
                    for w in adj.b_cat.hom(b, b2)? {
                        let rw = adj.right_mor(p, &w);
                        for f in &hs {
                            let lhs =
                                adj.fwd(p, a, b2, &adj.b_cat.compose(&w, f)?)?;
                            let rhs = adj.a_cat.compose(&rw, &adj.fwd(p, a, b, f)?)?;
                            if lhs != rhs {
                                rep.fail(
                                    "adjunction-natural-b",
                                    format!("at P={}, A={}, B={}→B′={}", p.id(), a.id(), b.id(), b2.id()),
                                );
                            }
                        }
                    }
                }
                // naturality in the parameter
                for p2 in &adj.params.probe {
                    for sigma in adj.params.hom(p, p2)? {
                        let lp = adj.left_pmor(&sigma, a);
                        let rp = adj.right_pmor(&sigma, b);
                        for f2 in adj.b_cat.hom(&adj.left_obj(p2, a), b)? {
                            let lhs =
                                adj.fwd(p, a, b, &adj.b_cat.compose(&f2, &lp)?)?;
                            let rhs =
                                adj.a_cat.compose(&rp, &adj.fwd(p2, a, b, &f2)?)?;
                            if lhs != rhs {
                                rep.fail(
                                    "adjunction-natural-param",
                                    format!("at σ:{}→{}, A={}, B={}", p.id(), p2.id(), a.id(), b.id()),
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(rep)
}

// ---------------------------------------------------------------------------
// enrichments
// ---------------------------------------------------------------------------

type HomObjFn = Rc<dyn Fn(&Obj, &Obj) -> Obj>;
type HomMorFn = Rc<dyn Fn(&Morphism, &Morphism) -> Result<Morphism>>;
type UnitFn = Rc<dyn Fn(&Obj) -> Result<Morphism>>;
type CompFn = Rc<dyn Fn(&Obj, &Obj, &Obj) -> Result<Morphism>>;

/// An enrichment of `c` in the monoidal category `v`: hom-objects X⊸Y,
/// identity elements j_X : I → X⊸X and composition
/// M_{X,Y,Z} : (Y⊸Z)⊗(X⊸Y) → X⊸Z.
#[derive(Clone)]
pub struct Enrichment {
    pub v: MonoidalStructure,
    pub c: Category,
    pub label: String,
    hom_obj: HomObjFn,
    hom_mor: HomMorFn,
    j: UnitFn,
    comp: CompFn,
}

impl std::fmt::Debug for Enrichment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Enrichment({})", self.label)
    }
}

impl Enrichment {
    pub fn new(
        v: MonoidalStructure,
        c: Category,
        label: impl Into<String>,
        hom_obj: impl Fn(&Obj, &Obj) -> Obj + 'static,
        hom_mor: impl Fn(&Morphism, &Morphism) -> Result<Morphism> + 'static,
        j: impl Fn(&Obj) -> Result<Morphism> + 'static,
        comp: impl Fn(&Obj, &Obj, &Obj) -> Result<Morphism> + 'static,
    ) -> Enrichment {
        Enrichment {
            v,
            c,
            label: label.into(),
            hom_obj: Rc::new(hom_obj),
            hom_mor: Rc::new(hom_mor),
            j: Rc::new(j),
            comp: Rc::new(comp),
        }
    }
    pub fn hom_obj(&self, x: &Obj, y: &Obj) -> Obj {
        (self.hom_obj)(x, y)
    }
    /// `u ⊸ w : (X⊸Y) → (X′⊸Y′)` for u : X′ → X and w : Y → Y′.
    pub fn hom_mor(&self, u: &Morphism, w: &Morphism) -> Result<Morphism> {
        (self.hom_mor)(u, w)
    }
    /// Post-composition `X ⊸ w`.
    pub fn hom_post(&self, x: &Obj, w: &Morphism) -> Result<Morphism> {
        self.hom_mor(&self.c.identity(x), w)
    }
    /// Pre-composition `u ⊸ Y`.
    pub fn hom_pre(&self, u: &Morphism, y: &Obj) -> Result<Morphism> {
        self.hom_mor(u, &self.c.identity(y))
    }
    pub fn j(&self, x: &Obj) -> Result<Morphism> {
        (self.j)(x)
    }
    pub fn m(&self, x: &Obj, y: &Obj, z: &Obj) -> Result<Morphism> {
        (self.comp)(x, y, z)
    }
    /// The underlying-element map ĵ f = (X⊸f)∘j_X : I → X⊸Y.
    pub fn jhat(&self, x: &Obj, f: &Morphism) -> Result<Morphism> {
        self.v.base.compose(&self.hom_post(x, f)?, &self.j(x)?)
    }
    /// The hom functor op(C)×C → V as ordinary functor data.
    pub fn hom_functor(&self) -> FunctorData {
        let me = self.clone();
        let me2 = self.clone();
        FunctorData::new(
            format!("hom({})", self.label),
            product_category(&opposite_category(&self.c), &self.c),
            self.v.base.clone(),
            move |p: &Obj| {
                let (x, y) = p.parts().expect("hom functor takes pair objects");
                me.hom_obj(&x, &y)
            },
            move |m: &Morphism| {
                let (uop, w) = unpair_mor(m).expect("hom functor takes pair morphisms");
                me2.hom_mor(&op_underlying(&uop), &w)
                    .expect("hom_mor failed inside hom functor")
            },
        )
    }
}

/// Validate the enrichment axioms on the probe window: functoriality of the
/// hom, naturality of j, bijectivity of ĵ, naturality of M, and the unit
/// and associativity laws for composition.
pub fn validate_enrichment(e: &Enrichment) -> Result<LawReport> {
    let mut rep = LawReport::default();
    let v = &e.v;
    let c = &e.c;

    rep.merge(validate_functor(&e.hom_functor())?);

    for x in &c.probe {
        // j typing
        let j = e.j(x)?;
        if j.dom != v.unit || j.cod != e.hom_obj(x, x) {
            rep.fail("enrich-j-typing", format!("j_{} is {} -> {}", x.id(), j.dom, j.cod));
        }
        for y in &c.probe {
            // naturality of j / compatibility of ĵ with both legs
            for f in c.hom(x, y)? {
                let lhs = v.base.compose(&e.hom_post(x, &f)?, &e.j(x)?)?;
                let rhs = v.base.compose(&e.hom_pre(&f, y)?, &e.j(y)?)?;
                if lhs != rhs {
                    rep.fail("enrich-j-natural", format!("at {} : {} → {}", f, x.id(), y.id()));
                }
            }
            // ĵ is a bijection C(X,Y) ≅ V(I, X⊸Y)
            let mut images = Vec::new();
            for f in c.hom(x, y)? {
                let img = e.jhat(x, &f)?;
                if images.contains(&img) {
                    rep.fail(
                        "enrich-jhat-injective",
                        format!("ĵ identifies distinct morphisms at ({}, {})", x.id(), y.id()),
                    );
                } else {
                    images.push(img);
                }
            }
            let pts = v.base.hom(&v.unit, &e.hom_obj(x, y))?;
            if images.len() != pts.len() {
                rep.fail(
                    "enrich-jhat-surjective",
                    format!(
                        "|C({},{})| = {} but |V(I, {}⊸{})| = {}",
                        x.id(),
                        y.id(),
                        images.len(),
                        x.id(),
                        y.id(),
                        pts.len()
                    ),
                );
            }
            // unit laws for M
            let hxy = e.hom_obj(x, y);
            let left_unit = v.base.compose(
                &e.m(x, y, y)?,
                &v.tensor_mor(&e.j(y)?, &v.base.identity(&hxy)),
            )?;
            if left_unit != v.lam(&hxy) {
                rep.fail("enrich-unit-left", format!("M∘(j⊗id) ≠ λ at ({}, {})", x.id(), y.id()));
            }
            let right_unit = v.base.compose_chain(&[
                &e.m(x, x, y)?,
                &v.tensor_mor(&v.base.identity(&hxy), &e.j(x)?),
                &v.rho(&hxy),
            ])?;
            if right_unit != v.base.identity(&hxy) {
                rep.fail("enrich-unit-right", format!("M∘(id⊗j)∘ρ ≠ id at ({}, {})", x.id(), y.id()));
            }
        }
    }

    // naturality of M in the outer variables, extranaturality in the middle
    for x in &c.probe {
        for y in &c.probe {
            let hxy = e.hom_obj(x, y);
            for z in &c.probe {
                let hyz = e.hom_obj(y, z);
                for w in &c.probe {
                    // post-composition (covariant in Z): w0 : Z → W
                    for w0 in c.hom(z, w)? {
                        let lhs = v.base.compose(&e.hom_post(x, &w0)?, &e.m(x, y, z)?)?;
                        let rhs = v.base.compose(
                            &e.m(x, y, w)?,
                            &v.tensor_mor(&e.hom_post(y, &w0)?, &v.base.identity(&hxy)),
                        )?;
                        if lhs != rhs {
                            rep.fail("enrich-m-natural-z", format!("at ({},{},{},{})", x.id(), y.id(), z.id(), w.id()));
                        }
                    }
                    // pre-composition (contravariant in X): u : W → X
                    for u in c.hom(w, x)? {
                        let lhs = v.base.compose(&e.hom_pre(&u, z)?, &e.m(x, y, z)?)?;
                        let rhs = v.base.compose(
                            &e.m(w, y, z)?,
                            &v.tensor_mor(&v.base.identity(&hyz), &e.hom_pre(&u, y)?),
                        )?;
                        if lhs != rhs {
                            rep.fail("enrich-m-natural-x", format!("at ({},{},{},{})", x.id(), y.id(), z.id(), w.id()));
                        }
                    }
                    // extranaturality in Y: t : Y → W
                    for t in c.hom(y, w)? {
                        let lhs = v.base.compose(
                            &e.m(x, y, z)?,
                            &v.tensor_mor(&e.hom_pre(&t, z)?, &v.base.identity(&hxy)),
                        )?;
                        let rhs = v.base.compose(
                            &e.m(x, w, z)?,
                            &v.tensor_mor(&v.base.identity(&e.hom_obj(w, z)), &e.hom_post(x, &t)?),
                        )?;
                        if lhs != rhs {
                            rep.fail("enrich-m-extranatural-y", format!("at ({},{},{},{})", x.id(), y.id(), z.id(), w.id()));
                        }
                    }
                }
                // associativity of M
                for w in &c.probe {
                    let hwx = e.hom_obj(w, x);
                    let lhs = v.base.compose(
                        &e.m(w, x, z)?,
                        &v.tensor_mor(&e.m(x, y, z)?, &v.base.identity(&hwx)),
                    )?;
                    let rhs = v.base.compose_chain(&[
                        &e.m(w, y, z)?,
                        &v.tensor_mor(&v.base.identity(&hyz), &e.m(w, x, y)?),
                        &v.assoc(&hyz, &hxy, &hwx),
                    ])?;
                    if lhs != rhs {
                        rep.fail("enrich-m-assoc", format!("at ({},{},{},{})", w.id(), x.id(), y.id(), z.id()));
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// Build an enrichment of the acted category from a left action, using the
/// currying adjunctions `adjs` (parameter = the acted object X, so
/// L_X Γ = Γ▷X ⊣ X⊸− = R_X) and `hom_v` (internal hom of the enriching
/// category, L_Γ Δ = Δ⊗Γ ⊣ Γ⊸−). Fails with `ComparisonNotIso` when the
/// comparison map (Γ▷X)⊸Y → Γ⊸(X⊸Y) is not invertible on the window.
pub fn enrichment_from_action(
    act: &LeftAction,
    adjs: &Adjunction,
    hom_v: &Adjunction,
) -> Result<Enrichment> {
    let v = act.v.clone();
    let c = act.c.clone();

    let hom_obj = {
        let adjs = adjs.clone();
        move |x: &Obj, y: &Obj| adjs.right_obj(x, y)
    };
    let jfam = {
        let adjs = adjs.clone();
        let act = act.clone();
        let unit = v.unit.clone();
        move |x: &Obj| adjs.fwd(x, &unit, x, &act.lam(x))
    };
    let ev = {
        let adjs = adjs.clone();
        move |x: &Obj, y: &Obj| adjs.ev(x, y)
    };
    let comp = {
        let adjs = adjs.clone();
        let act = act.clone();
        let ev = ev.clone();
        let v = v.clone();
        move |x: &Obj, y: &Obj, z: &Obj| {
            let hyz = adjs.right_obj(y, z);
            let hxy = adjs.right_obj(x, y);
            let dom = v.tensor_obj(&hyz, &hxy);
            let inner = act.c.compose_chain(&[
                &ev(y, z)?,
                &act.whisker_r(&hyz, &ev(x, y)?),
                &act.assoc(&hyz, &hxy, x),
            ])?;
            adjs.fwd(x, &dom, z, &inner)
        }
    };
    let hom_mor = {
        let adjs = adjs.clone();
        let act = act.clone();
        let ev = ev.clone();
        move |u: &Morphism, w: &Morphism| {
            // u : X′ → X, w : Y → Y′ give (X⊸Y) → (X′⊸Y′)
            let hxy = adjs.right_obj(&u.cod, &w.dom);
            let inner = act.c.compose_chain(&[
                w,
                &ev(&u.cod, &w.dom)?,
                &act.whisker_r(&hxy, u),
            ])?;
            adjs.fwd(&u.dom, &hxy, &w.cod, &inner)
        }
    };

    // comparison (Γ▷X)⊸Y → Γ⊸(X⊸Y) must be invertible on the window
    for g in &v.base.probe {
        for x in &c.probe {
            for y in &c.probe {
                let gx = act.act_obj(g, x);
                let a = adjs.right_obj(&gx, y);
                let hxy = adjs.right_obj(x, y);
                let inner2 = c.compose(&ev(&gx, y)?, &act.assoc(&a, g, x))?;
                let mtilde = adjs.fwd(x, &v.tensor_obj(&a, g), y, &inner2)?;
                let kappa = hom_v.fwd(g, &a, &hxy, &mtilde)?;
                if invert(&v.base, &kappa).is_err() {
                    return Err(LabError::ComparisonNotIso(format!(
                        "comparison ({}▷{})⊸{} → {}⊸({}⊸{}) is not invertible on the window",
                        g.id(),
                        x.id(),
                        y.id(),
                        g.id(),
                        x.id(),
                        y.id()
                    )));
                }
            }
        }
    }

    Ok(Enrichment::new(
        v,
        c,
        format!("enrich({})", act.c.name),
        hom_obj,
        hom_mor,
        jfam,
        comp,
    ))
}

// ---------------------------------------------------------------------------
// enriched functors and naturals
// ---------------------------------------------------------------------------

type FMapFn = Rc<dyn Fn(&Obj, &Obj) -> Result<Morphism>>;

/// A functor enriched between two enrichments over the same base:
/// an object map together with hom-object actions
/// fmap_{X,Y} : (X⊸Y) → (FX⊸FY).
#[derive(Clone)]
pub struct EnrichedFunctorData {
    pub e_c: Enrichment,
    pub e_d: Enrichment,
    pub label: String,
    on_obj: Rc<dyn Fn(&Obj) -> Obj>,
    fmap: FMapFn,
}

impl std::fmt::Debug for EnrichedFunctorData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "EnrichedFunctorData({})", self.label)
    }
}

impl EnrichedFunctorData {
    pub fn new(
        e_c: Enrichment,
        e_d: Enrichment,
        label: impl Into<String>,
        on_obj: impl Fn(&Obj) -> Obj + 'static,
        fmap: impl Fn(&Obj, &Obj) -> Result<Morphism> + 'static,
    ) -> EnrichedFunctorData {
        EnrichedFunctorData {
            e_c,
            e_d,
            label: label.into(),
            on_obj: Rc::new(on_obj),
            fmap: Rc::new(fmap),
        }
    }
    pub fn obj(&self, x: &Obj) -> Obj {
        (self.on_obj)(x)
    }
    pub fn fmap(&self, x: &Obj, y: &Obj) -> Result<Morphism> {
        (self.fmap)(x, y)
    }
}

/// Validate the enriched functor axioms: typing of fmap, preservation of
/// identity elements and of composition.
pub fn validate_enriched_functor(f: &EnrichedFunctorData) -> Result<LawReport> {
    let mut rep = LawReport::default();
    let v = &f.e_c.v;
    let c = &f.e_c.c;
    for x in &c.probe {
        let fx = f.obj(x);
        for y in &c.probe {
            let fy = f.obj(y);
            let fm = f.fmap(x, y)?;
            if fm.dom != f.e_c.hom_obj(x, y) || fm.cod != f.e_d.hom_obj(&fx, &fy) {
                rep.fail(
                    "efunctor-typing",
                    format!("fmap_({},{}) is {} -> {}", x.id(), y.id(), fm.dom, fm.cod),
                );
                continue;
            }
            if !mor_in_category(&v.base, &fm) {
                rep.fail(
                    "efunctor-membership",
                    format!("fmap_({},{}) is not a morphism of the enriching category", x.id(), y.id()),
                );
            }
        }
        // identity elements
        let lhs = v.base.compose(&f.fmap(x, x)?, &f.e_c.j(x)?)?;
        if lhs != f.e_d.j(&fx)? {
            rep.fail("efunctor-j", format!("fmap∘j ≠ j at {}", x.id()));
        }
    }
    for x in &c.probe {
        for y in &c.probe {
            for z in &c.probe {
                let lhs = v.base.compose(&f.fmap(x, z)?, &f.e_c.m(x, y, z)?)?;
                let rhs = v.base.compose(
                    &f.e_d.m(&f.obj(x), &f.obj(y), &f.obj(z))?,
                    &v.tensor_mor(&f.fmap(y, z)?, &f.fmap(x, y)?),
                )?;
                if lhs != rhs {
                    rep.fail(
                        "efunctor-m",
                        format!("fmap∘M ≠ M∘(fmap⊗fmap) at ({},{},{})", x.id(), y.id(), z.id()),
                    );
                }
            }
        }
    }
    Ok(rep)
}

/// Whether a transformation with components `tau` is enriched-natural
/// between two enriched functors: (FX⊸τ_Y)∘fmapF = (τ_X⊸GY)∘fmapG.
pub fn is_enriched_natural(
    tau: &dyn Fn(&Obj) -> Morphism,
    f: &EnrichedFunctorData,
    g: &EnrichedFunctorData,
) -> Result<bool> {
    let v = &f.e_c.v;
    let c = &f.e_c.c;
    for x in &c.probe {
        for y in &c.probe {
            let lhs = v
                .base
                .compose(&f.e_d.hom_post(&f.obj(x), &tau(y))?, &f.fmap(x, y)?)?;
            let rhs = v
                .base
                .compose(&f.e_d.hom_pre(&tau(x), &g.obj(y))?, &g.fmap(x, y)?)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Convert a context-indexed (strong) functor to an enriched one, via the
/// currying adjunctions of the source and target actions: fmap is the
/// transpose of F⟨X⊸Y⟩(ev).
pub fn strong_to_enriched_functor(
    cf: &CtxFunctorData,
    e_c: &Enrichment,
    e_d: &Enrichment,
    adjs_c: &Adjunction,
    adjs_d: &Adjunction,
) -> EnrichedFunctorData {
    let cf2 = cf.clone();
    let cf3 = cf.clone();
    let adjs_c = adjs_c.clone();
    let adjs_d = adjs_d.clone();
    EnrichedFunctorData::new(
        e_c.clone(),
        e_d.clone(),
        format!("{}-enriched", cf.name),
        move |x| cf2.obj(x),
        move |x: &Obj, y: &Obj| {
            let hxy = adjs_c.right_obj(x, y);
            let inner = cf3.ctx(&hxy, x, &adjs_c.ev(x, y)?)?;
            adjs_d.fwd(&cf3.obj(x), &hxy, &cf3.obj(y), &inner)
        },
    )
}

/// Convert an enriched functor back to context-indexed form:
/// F⟨Γ⟩f is the transpose of fmap ∘ f̂.
pub fn enriched_to_strong_functor(
    ef: &EnrichedFunctorData,
    act_c: &LeftAction,
    act_d: &LeftAction,
    adjs_c: &Adjunction,
    adjs_d: &Adjunction,
) -> CtxFunctorData {
    let ef2 = ef.clone();
    let ef3 = ef.clone();
    let adjs_c = adjs_c.clone();
    let adjs_d = adjs_d.clone();
    let v = act_c.v.base.clone();
    CtxFunctorData::new(
        format!("{}-strong", ef.label),
        act_c.clone(),
        act_d.clone(),
        move |x| ef2.obj(x),
        move |g: &Obj, x: &Obj, f: &Morphism| {
            let y = &f.cod;
            let fhat = adjs_c.fwd(x, g, y, f)?;
            let curried = v.compose(&ef3.fmap(x, y)?, &fhat)?;
            adjs_d.bwd(&ef3.obj(x), g, &ef3.obj(y), &curried)
        },
    )
}

// ---------------------------------------------------------------------------
// enriched monads
// ---------------------------------------------------------------------------

/// A monad enriched in V: object map, unit morphisms, and internal Kleisli
/// extension bind_{X,Y} : (X⊸TY) → (TX⊸TY).
#[derive(Clone)]
pub struct EnrichedMonadData {
    pub e: Enrichment,
    pub label: String,
    on_obj: Rc<dyn Fn(&Obj) -> Obj>,
    unit: Rc<dyn Fn(&Obj) -> Morphism>,
    bind: FMapFn,
}

impl std::fmt::Debug for EnrichedMonadData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "EnrichedMonadData({})", self.label)
    }
}

impl EnrichedMonadData {
    pub fn new(
        e: Enrichment,
        label: impl Into<String>,
        on_obj: impl Fn(&Obj) -> Obj + 'static,
        unit: impl Fn(&Obj) -> Morphism + 'static,
        bind: impl Fn(&Obj, &Obj) -> Result<Morphism> + 'static,
    ) -> EnrichedMonadData {
        EnrichedMonadData {
            e,
            label: label.into(),
            on_obj: Rc::new(on_obj),
            unit: Rc::new(unit),
            bind: Rc::new(bind),
        }
    }
    pub fn t_obj(&self, x: &Obj) -> Obj {
        (self.on_obj)(x)
    }
    pub fn eta(&self, x: &Obj) -> Morphism {
        (self.unit)(x)
    }
    pub fn bind(&self, x: &Obj, y: &Obj) -> Result<Morphism> {
        (self.bind)(x, y)
    }
}

/// Validate the three enriched monad laws (plus typing).
pub fn validate_enriched_monad(m: &EnrichedMonadData) -> Result<LawReport> {
    let mut rep = LawReport::default();
    let e = &m.e;
    let v = &e.v;
    let c = &e.c;
    for x in &c.probe {
        let tx = m.t_obj(x);
        let eta = m.eta(x);
        if eta.dom != *x || eta.cod != tx || !c.hom(x, &tx)?.contains(&eta) {
            rep.fail("emonad-unit-typing", format!("η_{} is {} -> {}", x.id(), eta.dom, eta.cod));
            continue;
        }
        for y in &c.probe {
            let ty = m.t_obj(y);
            let b = m.bind(x, y)?;
            if b.dom != e.hom_obj(x, &ty) || b.cod != e.hom_obj(&tx, &ty) {
                rep.fail(
                    "emonad-bind-typing",
                    format!("bind_({},{}) is {} -> {}", x.id(), y.id(), b.dom, b.cod),
                );
                continue;
            }
            if !mor_in_category(&v.base, &b) {
                rep.fail(
                    "emonad-bind-membership",
                    format!("bind_({},{}) is not a morphism of the enriching category", x.id(), y.id()),
                );
                continue;
            }
            // (η_X ⊸ TY)∘bind = id
            let lhs = v.base.compose(&e.hom_pre(&eta, &ty)?, &b)?;
            if lhs != v.base.identity(&b.dom) {
                rep.fail("emonad-bind-unit", format!("(η⊸TY)∘bind ≠ id at ({},{})", x.id(), y.id()));
            }
        }
        // bind∘(X⊸η)∘j_X = j_TX
        let lhs = v.base.compose_chain(&[
            &m.bind(x, x)?,
            &e.hom_post(x, &eta)?,
            &e.j(x)?,
        ])?;
        if lhs != e.j(&tx)? {
            rep.fail("emonad-j", format!("bind∘(X⊸η)∘j ≠ j at {}", x.id()));
        }
    }
    // internal Kleisli associativity
    for x in &c.probe {
        let tx = m.t_obj(x);
        for y in &c.probe {
            let ty = m.t_obj(y);
            let hxty = e.hom_obj(x, &ty);
            for z in &c.probe {
                let tz = m.t_obj(z);
                let lhs = v.base.compose_chain(&[
                    &m.bind(x, z)?,
                    &e.m(x, &ty, &tz)?,
                    &v.tensor_mor(&m.bind(y, z)?, &v.base.identity(&hxty)),
                ])?;
                let rhs = v.base.compose(
                    &e.m(&tx, &ty, &tz)?,
                    &v.tensor_mor(&m.bind(y, z)?, &m.bind(x, y)?),
                )?;
                if lhs != rhs {
                    rep.fail(
                        "emonad-assoc",
                        format!("internal extension laws disagree at ({},{},{})", x.id(), y.id(), z.id()),
                    );
                }
            }
        }
    }
    Ok(rep)
}

/// Whether `tau` is a morphism of enriched monads S ⇒ T:
/// τ∘η = η and (SX⊸τ_Y)∘bindS = (τ_X⊸TY)∘bindT∘(X⊸τ_Y).
pub fn is_enriched_monad_morphism(
    tau: &dyn Fn(&Obj) -> Morphism,
    s: &EnrichedMonadData,
    t: &EnrichedMonadData,
) -> Result<bool> {
    let e = &s.e;
    let v = &e.v;
    let c = &e.c;
    for x in &c.probe {
        if c.compose(&tau(x), &s.eta(x))? != t.eta(x) {
            return Ok(false);
        }
        for y in &c.probe {
            let ty = t.t_obj(y);
            let lhs = v
                .base
                .compose(&e.hom_post(&s.t_obj(x), &tau(y))?, &s.bind(x, y)?)?;
            let rhs = v.base.compose_chain(&[
                &e.hom_pre(&tau(x), &ty)?,
                &t.bind(x, y)?,
                &e.hom_post(x, &tau(y))?,
            ])?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Convert a strong monad (Kleisli form) to an enriched monad: bind is the
/// transpose of the extension of ev_{X,TY}.
pub fn strong_to_enriched_monad(
    m: &KleisliStrongMonad,
    e: &Enrichment,
    adjs: &Adjunction,
) -> EnrichedMonadData {
    let m2 = m.clone();
    let m3 = m.clone();
    let m4 = m.clone();
    let adjs = adjs.clone();
    EnrichedMonadData::new(
        e.clone(),
        format!("{}-enriched", m.label),
        move |x| m2.t_obj(x),
        move |x| m3.eta(x),
        move |x: &Obj, y: &Obj| {
            let ty = m4.t_obj(y);
            let hxty = adjs.right_obj(x, &ty);
            let ext = m4.extend(&hxty, x, y, &adjs.ev(x, &ty)?)?;
            adjs.fwd(&m4.t_obj(x), &hxty, &ty, &ext)
        },
    )
}

/// Convert an enriched monad back to Kleisli strong form: the extension of
/// f : Γ▷X → TY is the transpose of bind ∘ f̂.
pub fn enriched_to_strong_monad(
    em: &EnrichedMonadData,
    act: &LeftAction,
    adjs: &Adjunction,
) -> KleisliStrongMonad {
    let em2 = em.clone();
    let em3 = em.clone();
    let em4 = em.clone();
    let adjs = adjs.clone();
    let v = act.v.base.clone();
    KleisliStrongMonad::new(
        act.clone(),
        format!("{}-strong", em.label),
        move |x| em2.t_obj(x),
        move |x| em3.eta(x),
        move |g: &Obj, x: &Obj, y: &Obj, f: &Morphism| {
            let ty = em4.t_obj(y);
            let fhat = adjs.fwd(x, g, &ty, f)?;
            let curried = v.compose(&em4.bind(x, y)?, &fhat)?;
            adjs.bwd(&em4.t_obj(x), g, &ty, &curried)
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::self_action;
    use crate::bounds::Bounds;
    use crate::core::Elem;
    use crate::corpus::*;
    use crate::strength::{identity_strength, strength_to_ctxform};
    use crate::strongmonad::KleisliStrongMonad;

    fn finset_action(sizes: &[usize]) -> LeftAction {
        let c = finset_sized(sizes, Bounds::default());
        self_action(&finset_cartesian(&c).unwrap())
    }

    fn finset_adjs(a: &LeftAction) -> (Adjunction, Adjunction) {
        let expf = exp_for("finset");
        (
            curry_adjunction(a, CurryFamily::Enrich, expf.clone()),
            curry_adjunction(a, CurryFamily::TensorHom, expf),
        )
    }

    fn extends_agree(m1: &KleisliStrongMonad, m2: &KleisliStrongMonad) -> bool {
        let a = &m1.act;
        for g in &a.v.base.probe {
            for x in &a.c.probe {
                for y in &a.c.probe {
                    let gx = a.act_obj(g, x);
                    let ty = m1.t_obj(y);
                    for f in a.c.hom(&gx, &ty).unwrap() {
                        if m1.extend(g, x, y, &f).unwrap() != m2.extend(g, x, y, &f).unwrap() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    #[test]
    fn finset_curry_adjunctions_validate() {
        let a = finset_action(&[0, 1, 2]);
        let expf = exp_for("finset");
        for fam in [CurryFamily::Power, CurryFamily::Enrich, CurryFamily::TensorHom] {
            let adj = curry_adjunction(&a, fam, expf.clone());
            let rep = validate_adjunction(&adj).unwrap();
            assert!(rep.pass(), "{fam:?}: {}", rep.summary());
        }
    }

    #[test]
    fn bool2_residuation_validates() {
        let c = bool2(Bounds::default());
        let a = self_action(&bool2_meet(&c).unwrap());
        let adj = curry_adjunction(&a, CurryFamily::Power, exp_for("bool2"));
        let rep = validate_adjunction(&adj).unwrap();
        assert!(rep.pass(), "{}", rep.summary());
    }

    #[test]
    fn z2_and_smash_curry_adjunctions_validate() {
        let z = z2act(Bounds::default());
        let az = self_action(&z2act_cartesian(&z).unwrap());
        for fam in [CurryFamily::Enrich, CurryFamily::TensorHom] {
            let rep = validate_adjunction(&curry_adjunction(&az, fam, exp_for("z2act"))).unwrap();
            assert!(rep.pass(), "z2act {fam:?}: {}", rep.summary());
        }
        let p = finsetpt(Bounds::default());
        let ap = self_action(&finsetpt_smash(&p).unwrap());
        for fam in [CurryFamily::Enrich, CurryFamily::TensorHom] {
            let rep =
                validate_adjunction(&curry_adjunction(&ap, fam, exp_for("finsetpt"))).unwrap();
            assert!(rep.pass(), "smash {fam:?}: {}", rep.summary());
        }
    }

    #[test]
    fn corrupted_transpose_fails_validation() {
        let a = finset_action(&[0, 1, 2]);
        let good = curry_adjunction(&a, CurryFamily::Power, exp_for("finset"));
        let g2 = good.clone();
        let g3 = good.clone();
        let g4 = good.clone();
        let g5 = good.clone();
        let g6 = good.clone();
        let g7 = good.clone();
        let g8 = good.clone();
        let mutant = Adjunction::new(
            "corrupted",
            good.params.clone(),
            good.a_cat.clone(),
            good.b_cat.clone(),
            move |p: &Obj, x: &Obj| g2.left_obj(p, x),
            move |p: &Obj, u: &Morphism| g3.left_mor(p, u),
            move |s: &Morphism, x: &Obj| g4.left_pmor(s, x),
            move |p: &Obj, y: &Obj| g5.right_obj(p, y),
            move |p: &Obj, w: &Morphism| g6.right_mor(p, w),
            move |s: &Morphism, y: &Obj| g7.right_pmor(s, y),
            move |p: &Obj, x: &Obj, y: &Obj, f: &Morphism| {
                let m = g8.fwd(p, x, y, f)?;
                // scramble: send every element to the image of the first one
                if let Some(first) = m.dom.carrier().first() {
                    let v0 = m.apply(first).clone();
                    return Ok(Morphism::new(
                        m.dom.clone(),
                        m.cod.clone(),
                        m.dom.carrier().iter().map(|e| (e.clone(), v0.clone())),
                    ));
                }
                Ok(m)
            },
            move |p: &Obj, x: &Obj, y: &Obj, g: &Morphism| good.bwd(p, x, y, g),
        );
        let rep = validate_adjunction(&mutant).unwrap();
        assert!(!rep.pass());
    }

    #[test]
    fn finset_enrichment_validates() {
        let a = finset_action(&[0, 1, 2]);
        let (adjs, hom_v) = finset_adjs(&a);
        let e = enrichment_from_action(&a, &adjs, &hom_v).unwrap();
        let rep = validate_enrichment(&e).unwrap();
        assert!(rep.pass(), "{}", rep.summary());
    }

    #[test]
    fn bool2_enrichment_validates() {
        let c = bool2(Bounds::default());
        let a = self_action(&bool2_meet(&c).unwrap());
        let expf = exp_for("bool2");
        let adjs = curry_adjunction(&a, CurryFamily::Enrich, expf.clone());
        let hom_v = curry_adjunction(&a, CurryFamily::TensorHom, expf);
        let e = enrichment_from_action(&a, &adjs, &hom_v).unwrap();
        let rep = validate_enrichment(&e).unwrap();
        assert!(rep.pass(), "{}", rep.summary());
    }

    #[test]
    fn smash_enrichment_validates() {
        let p = finsetpt(Bounds::default());
        let a = self_action(&finsetpt_smash(&p).unwrap());
        let expf = exp_for("finsetpt");
        let adjs = curry_adjunction(&a, CurryFamily::Enrich, expf.clone());
        let hom_v = curry_adjunction(&a, CurryFamily::TensorHom, expf);
        let e = enrichment_from_action(&a, &adjs, &hom_v).unwrap();
        let rep = validate_enrichment(&e).unwrap();
        assert!(rep.pass(), "{}", rep.summary());
    }

    #[test]
    fn z2act_enrichment_validates() {
        let z = z2act(Bounds::default());
        let a = self_action(&z2act_cartesian(&z).unwrap());
        let expf = exp_for("z2act");
        let adjs = curry_adjunction(&a, CurryFamily::Enrich, expf.clone());
        let hom_v = curry_adjunction(&a, CurryFamily::TensorHom, expf);
        let e = enrichment_from_action(&a, &adjs, &hom_v).unwrap();
        let rep = validate_enrichment(&e).unwrap();
        assert!(rep.pass(), "{}", rep.summary());
    }

    #[test]
    fn broken_internal_hom_reports_comparison_not_iso() {
        let a = finset_action(&[0, 1, 2]);
        let (adjs, hom_v) = finset_adjs(&a);
        let h2 = hom_v.clone();
        let h3 = hom_v.clone();
        let h4 = hom_v.clone();
        let h5 = hom_v.clone();
        let h6 = hom_v.clone();
        let h7 = hom_v.clone();
        let h8 = hom_v.clone();
        let bad = Adjunction::new(
            "collapsing-hom",
            hom_v.params.clone(),
            hom_v.a_cat.clone(),
            hom_v.b_cat.clone(),
            move |p: &Obj, x: &Obj| h2.left_obj(p, x),
            move |p: &Obj, u: &Morphism| h3.left_mor(p, u),
            move |s: &Morphism, x: &Obj| h4.left_pmor(s, x),
            move |p: &Obj, y: &Obj| h5.right_obj(p, y),
            move |p: &Obj, w: &Morphism| h6.right_mor(p, w),
            move |s: &Morphism, y: &Obj| h7.right_pmor(s, y),
            move |p: &Obj, x: &Obj, y: &Obj, f: &Morphism| {
                let m = h8.fwd(p, x, y, f)?;
                if let Some(first) = m.cod.carrier().first() {
                    let v0 = first.clone();
                    return Ok(Morphism::new(
                        m.dom.clone(),
                        m.cod.clone(),
                        m.dom.carrier().iter().map(|e| (e.clone(), v0.clone())),
                    ));
                }
                Ok(m)
            },
            move |p: &Obj, x: &Obj, y: &Obj, g: &Morphism| hom_v.bwd(p, x, y, g),
        );
        match enrichment_from_action(&a, &adjs, &bad) {
            Err(LabError::ComparisonNotIso(_)) => {}
            other => panic!("expected ComparisonNotIso, got {other:?}"),
        }
    }

    #[test]
    fn square_functor_enriched_roundtrip() {
        let a = finset_action(&[0, 1, 2]);
        let (adjs, hom_v) = finset_adjs(&a);
        let e = enrichment_from_action(&a, &adjs, &hom_v).unwrap();
        // the exception functor has small images, so the full enriched
        // functor laws are checkable on the window
        let exc_cf = strength_to_ctxform(&exc_strength(&a, &finset_obj(1)));
        let exc_ef = strong_to_enriched_functor(&exc_cf, &e, &e, &adjs, &adjs);
        let rep = validate_enriched_functor(&exc_ef).unwrap();
        assert!(rep.pass(), "{}", rep.summary());
        // the squaring functor doubles carrier sizes, which makes the
        // composition-law tensors too large to materialize; its conversion
        // is exercised through the exact round trip below
        let cf = strength_to_ctxform(&square_strength(&a));
        let ef = strong_to_enriched_functor(&cf, &e, &e, &adjs, &adjs);
        let back = enriched_to_strong_functor(&ef, &a, &a, &adjs, &adjs);
        for g in &a.v.base.probe {
            for x in &a.c.probe {
                for y in &a.c.probe {
                    let gx = a.act_obj(g, x);
                    for f in a.c.hom(&gx, y).unwrap() {
                        assert_eq!(
                            cf.ctx(g, x, &f).unwrap(),
                            back.ctx(g, x, &f).unwrap(),
                            "square round trip differs at Γ={}, X={}, Y={}",
                            g.id(),
                            x.id(),
                            y.id()
                        );
                        assert_eq!(
                            exc_cf.ctx(g, x, &f).unwrap(),
                            enriched_to_strong_functor(&exc_ef, &a, &a, &adjs, &adjs)
                                .ctx(g, x, &f)
                                .unwrap(),
                            "exception round trip differs at Γ={}, X={}, Y={}",
                            g.id(),
                            x.id(),
                            y.id()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn identity_functor_enriches_to_identity_fmap() {
        let a = finset_action(&[0, 1, 2]);
        let (adjs, hom_v) = finset_adjs(&a);
        let e = enrichment_from_action(&a, &adjs, &hom_v).unwrap();
        let cf = strength_to_ctxform(&identity_strength(&a));
        let ef = strong_to_enriched_functor(&cf, &e, &e, &adjs, &adjs);
        assert!(validate_enriched_functor(&ef).unwrap().pass());
        for x in &a.c.probe {
            for y in &a.c.probe {
                let h = e.hom_obj(x, y);
                assert_eq!(ef.fmap(x, y).unwrap(), a.c.identity(&h));
            }
        }
    }

    #[test]
    fn exc_monad_enriched_roundtrip() {
        let a = finset_action(&[0, 1, 2]);
        let (adjs, hom_v) = finset_adjs(&a);
        let e = enrichment_from_action(&a, &adjs, &hom_v).unwrap();
        let m = exc_strong_monad(&a, &finset_obj(1));
        let em = strong_to_enriched_monad(&m, &e, &adjs);
        let rep = validate_enriched_monad(&em).unwrap();
        assert!(rep.pass(), "{}", rep.summary());
        let back = enriched_to_strong_monad(&em, &a, &adjs);
        assert!(extends_agree(&m, &back));
        // identity monad sanity
        let idm = identity_strong_monad(&a);
        let eid = strong_to_enriched_monad(&idm, &e, &adjs);
        assert!(validate_enriched_monad(&eid).unwrap().pass());
        assert!(extends_agree(&idm, &enriched_to_strong_monad(&eid, &a, &adjs)));
    }

    #[test]
    fn bind_twisted_by_automorphism_fails() {
        let a = finset_action(&[0, 1, 2]);
        let (adjs, hom_v) = finset_adjs(&a);
        let e = enrichment_from_action(&a, &adjs, &hom_v).unwrap();
        let m = exc_strong_monad(&a, &finset_obj(1));
        let em = strong_to_enriched_monad(&m, &e, &adjs);
        let em2 = em.clone();
        let em3 = em.clone();
        let em4 = em.clone();
        let e2 = e.clone();
        let mutant = EnrichedMonadData::new(
            e.clone(),
            "exc-twisted-bind",
            move |x| em2.t_obj(x),
            move |x| em3.eta(x),
            move |x: &Obj, y: &Obj| {
                let b = em4.bind(x, y)?;
                // post-compose with the carrier-reversing bijection on TX⊸TY
                let cod = e2.hom_obj(&em4.t_obj(x), &em4.t_obj(y));
                let n = cod.carrier().len();
                let sigma = Morphism::new(
                    cod.clone(),
                    cod.clone(),
                    (0..n).map(|i| {
                        (cod.carrier()[i].clone(), cod.carrier()[n - 1 - i].clone())
                    }),
                );
                e2.v.base.compose(&sigma, &b)
            },
        );
        let rep = validate_enriched_monad(&mutant).unwrap();
        assert!(!rep.pass());
    }

    #[test]
    fn writer_z2_enriched_forms_differ() {
        let z = z2act(Bounds::default());
        let a = self_action(&z2act_cartesian(&z).unwrap());
        let expf = exp_for("z2act");
        let adjs = curry_adjunction(&a, CurryFamily::Enrich, expf.clone());
        let hom_v = curry_adjunction(&a, CurryFamily::TensorHom, expf);
        let e = enrichment_from_action(&a, &adjs, &hom_v).unwrap();
        let wc = writer_z2_monad(&a, WriterForm::Canonical);
        let wt = writer_z2_monad(&a, WriterForm::Twisted);
        let canon = strong_to_enriched_monad(&wc, &e, &adjs);
        let twist = strong_to_enriched_monad(&wt, &e, &adjs);
        // the full internal-composition law at the doubled carriers is too
        // large to materialize on this window; exactness of the conversion
        // is certified by the round trip instead
        assert!(extends_agree(&wc, &enriched_to_strong_monad(&canon, &a, &adjs)));
        assert!(extends_agree(&wt, &enriched_to_strong_monad(&twist, &a, &adjs)));
        let mut differ = false;
        for x in &a.c.probe {
            for y in &a.c.probe {
                if canon.bind(x, y).unwrap() != twist.bind(x, y).unwrap() {
                    differ = true;
                }
            }
        }
        assert!(differ, "the two writer presentations should have different binds");
        let id_tau = |x: &Obj| a.c.identity(&canon.t_obj(x));
        assert!(!is_enriched_monad_morphism(&id_tau, &canon, &twist).unwrap());
    }

    #[test]
    fn inl_is_an_enriched_monad_morphism() {
        let a = finset_action(&[0, 1, 2]);
        let (adjs, hom_v) = finset_adjs(&a);
        let e = enrichment_from_action(&a, &adjs, &hom_v).unwrap();
        let s = strong_to_enriched_monad(&identity_strong_monad(&a), &e, &adjs);
        let exc = exc_strong_monad(&a, &finset_obj(1));
        let t = strong_to_enriched_monad(&exc, &e, &adjs);
        let exc2 = exc.clone();
        let tau = move |x: &Obj| {
            Morphism::new(
                x.clone(),
                exc2.t_obj(x),
                x.carrier().iter().map(|v| (v.clone(), Elem::inl(v.clone()))),
            )
        };
        assert!(is_enriched_monad_morphism(&tau, &s, &t).unwrap());
        // the identity family is enriched-natural on the identity functor
        let cf = strength_to_ctxform(&identity_strength(&a));
        let ef = strong_to_enriched_functor(&cf, &e, &e, &adjs, &adjs);
        let idt = |x: &Obj| a.c.identity(x);
        assert!(is_enriched_natural(&idt, &ef, &ef).unwrap());
    }
}
