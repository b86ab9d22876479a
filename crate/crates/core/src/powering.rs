//! Powerings (cotensors) Γ⋔X, powered functors and monads, their
//! equivalence with the strength presentation, and liftings to categories
//! of algebras.

use std::rc::Rc;

use crate::action::LeftAction;
use crate::core::{
    op_underlying, opposite_category, product_category, unpair_mor, validate_functor, Category,
    FunctorData, LawReport, Morphism, Obj,
};
use crate::enrichment::Adjunction;
use crate::error::{LabError, Result};
use crate::monoidal::{invert, MonoidalStructure};
use crate::strength::CtxFunctorData;
use crate::strongmonad::{
    algebra_category, mor_in_category, AlgebraCategory, KleisliStrongMonad, MonadData,
};

// ---------------------------------------------------------------------------
// powerings
// ---------------------------------------------------------------------------

type PwObjFn = Rc<dyn Fn(&Obj, &Obj) -> Obj>;
type PwMorFn = Rc<dyn Fn(&Morphism, &Morphism) -> Result<Morphism>>;
type IFn = Rc<dyn Fn(&Obj) -> Result<Morphism>>;
type PFn = Rc<dyn Fn(&Obj, &Obj, &Obj) -> Result<Morphism>>;

/// A powering of `c` by the monoidal category `v`: objects Γ⋔X,
/// contravariant in Γ and covariant in X, with natural isomorphisms
/// i_X : X → I⋔X and p_{Γ,Γ′,X} : Γ⋔(Γ′⋔X) → (Γ′⊗Γ)⋔X.
#[derive(Clone)]
pub struct Powering {
    pub v: MonoidalStructure,
    pub c: Category,
    pub label: String,
    pw_obj: PwObjFn,
    pw_mor: PwMorFn,
    i: IFn,
    p: PFn,
}

impl std::fmt::Debug for Powering {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Powering({})", self.label)
    }
}

impl Powering {
    pub fn new(
        v: MonoidalStructure,
        c: Category,
        label: impl Into<String>,
        pw_obj: impl Fn(&Obj, &Obj) -> Obj + 'static,
        pw_mor: impl Fn(&Morphism, &Morphism) -> Result<Morphism> + 'static,
        i: impl Fn(&Obj) -> Result<Morphism> + 'static,
        p: impl Fn(&Obj, &Obj, &Obj) -> Result<Morphism> + 'static,
    ) -> Powering {
        Powering {
            v,
            c,
            label: label.into(),
            pw_obj: Rc::new(pw_obj),
            pw_mor: Rc::new(pw_mor),
            i: Rc::new(i),
            p: Rc::new(p),
        }
    }
    pub fn pw_obj(&self, g: &Obj, x: &Obj) -> Obj {
        (self.pw_obj)(g, x)
    }
    /// `σ⋔f : Γ⋔X → Δ⋔Y` for σ : Δ → Γ and f : X → Y.
    pub fn pw_mor(&self, sigma: &Morphism, f: &Morphism) -> Result<Morphism> {
        (self.pw_mor)(sigma, f)
    }
    /// `σ⋔X` (contravariant whiskering).
    pub fn pw_l(&self, sigma: &Morphism, x: &Obj) -> Result<Morphism> {
        self.pw_mor(sigma, &self.c.identity(x))
    }
    /// `Γ⋔f` (covariant whiskering).
    pub fn pw_r(&self, g: &Obj, f: &Morphism) -> Result<Morphism> {
        self.pw_mor(&self.v.base.identity(g), f)
    }
    pub fn i(&self, x: &Obj) -> Result<Morphism> {
        (self.i)(x)
    }
    pub fn i_inv(&self, x: &Obj) -> Result<Morphism> {
        invert(&self.c, &self.i(x)?)
    }
    pub fn p(&self, g: &Obj, g1: &Obj, x: &Obj) -> Result<Morphism> {
        (self.p)(g, g1, x)
    }
    pub fn p_inv(&self, g: &Obj, g1: &Obj, x: &Obj) -> Result<Morphism> {
        invert(&self.c, &self.p(g, g1, x)?)
    }
    /// The powering functor op(V)×C → C as ordinary functor data.
    pub fn pw_functor(&self) -> FunctorData {
        let me = self.clone();
        let me2 = self.clone();
        FunctorData::new(
            format!("pw({})", self.label),
            product_category(&opposite_category(&self.v.base), &self.c),
            self.c.clone(),
            move |pair: &Obj| {
                let (g, x) = pair.parts().expect("powering functor takes pair objects");
                me.pw_obj(&g, &x)
            },
            move |m: &Morphism| {
                let (sop, f) = unpair_mor(m).expect("powering functor takes pair morphisms");
                me2.pw_mor(&op_underlying(&sop), &f)
                    .expect("pw_mor failed inside powering functor")
            },
        )
    }
}

/// Validate the powering axioms on the probe window: functoriality, the
/// isomorphism and coherence laws for i and p, and their naturality.
pub fn validate_powering(pw: &Powering) -> Result<LawReport> {
    let mut rep = LawReport::default();
    let v = &pw.v;
    let c = &pw.c;

    rep.merge(validate_functor(&pw.pw_functor())?);

    for x in &c.probe {
        // i typing + iso
        let i = pw.i(x)?;
        if i.dom != *x || i.cod != pw.pw_obj(&v.unit, x) {
            rep.fail("pw-i-typing", format!("i_{} is {} -> {}", x.id(), i.dom, i.cod));
        } else if invert(c, &i).is_err() {
            rep.fail("pw-i-iso", format!("i_{} is not invertible", x.id()));
        }
        // i naturality
        for y in &c.probe {
            for f in c.hom(x, y)? {
                let lhs = c.compose(&pw.pw_r(&v.unit, &f)?, &pw.i(x)?)?;
                let rhs = c.compose(&pw.i(y)?, &f)?;
                if lhs != rhs {
                    rep.fail("pw-i-natural", format!("at {} : {} → {}", f, x.id(), y.id()));
                }
            }
        }
    }

    for g in &v.base.probe {
        for g1 in &v.base.probe {
            for x in &c.probe {
                // p typing + iso
                let p = pw.p(g, g1, x)?;
                let dom = pw.pw_obj(g, &pw.pw_obj(g1, x));
                let cod = pw.pw_obj(&v.tensor_obj(g1, g), x);
                if p.dom != dom || p.cod != cod {
                    rep.fail(
                        "pw-p-typing",
                        format!("p_({},{},{}) is {} -> {}", g.id(), g1.id(), x.id(), p.dom, p.cod),
                    );
                    continue;
                }
                if invert(c, &p).is_err() {
                    rep.fail("pw-p-iso", format!("p_({},{},{}) is not invertible", g.id(), g1.id(), x.id()));
                }
                // naturality in X
                for y in &c.probe {
                    for f in c.hom(x, y)? {
                        let lhs = c.compose(
                            &pw.p(g, g1, y)?,
                            &pw.pw_r(g, &pw.pw_r(g1, &f)?)?,
                        )?;
                        let rhs = c.compose(&pw.pw_r(&v.tensor_obj(g1, g), &f)?, &pw.p(g, g1, x)?)?;
                        if lhs != rhs {
                            rep.fail(
                                "pw-p-natural-x",
                                format!("at ({},{},{}→{})", g.id(), g1.id(), x.id(), y.id()),
                            );
                        }
                    }
                }
                // naturality in the outer context: σ : Δ → Γ
                for d in &v.base.probe {
                    for sigma in v.base.hom(d, g)? {
                        let lhs = c.compose(&pw.p(d, g1, x)?, &pw.pw_l(&sigma, &pw.pw_obj(g1, x))?)?;
                        let rhs = c.compose(
                            &pw.pw_l(&v.tensor_mor(&v.base.identity(g1), &sigma), x)?,
                            &pw.p(g, g1, x)?,
                        )?;
                        if lhs != rhs {
                            rep.fail(
                                "pw-p-natural-outer",
                                format!("at (σ:{}→{},{},{})", d.id(), g.id(), g1.id(), x.id()),
                            );
                        }
                    }
                    // naturality in the inner context: σ′ : Δ → Γ′
                    for sigma in v.base.hom(d, g1)? {
                        let lhs = c.compose(&pw.p(g, d, x)?, &pw.pw_r(g, &pw.pw_l(&sigma, x)?)?)?;
                        let rhs = c.compose(
                            &pw.pw_l(&v.tensor_mor(&sigma, &v.base.identity(g)), x)?,
                            &pw.p(g, g1, x)?,
                        )?;
                        if lhs != rhs {
                            rep.fail(
                                "pw-p-natural-inner",
                                format!("at ({},σ′:{}→{},{})", g.id(), d.id(), g1.id(), x.id()),
                            );
                        }
                    }
                }
            }
        }
    }

    // unit triangles
    for g in &v.base.probe {
        for x in &c.probe {
            let gx = pw.pw_obj(g, x);
            let lhs = c.compose(&pw.p(g, &v.unit, x)?, &pw.pw_r(g, &pw.i(x)?)?)?;
            let rhs = pw.pw_l(&v.lam(g), x)?;
            if lhs != rhs {
                rep.fail("pw-unit-inner", format!("p∘(Γ⋔i) ≠ λ⋔X at ({},{})", g.id(), x.id()));
            }
            let round = c.compose_chain(&[
                &pw.pw_l(&v.rho(g), x)?,
                &pw.p(&v.unit, g, x)?,
                &pw.i(&gx)?,
            ])?;
            if round != c.identity(&gx) {
                rep.fail("pw-unit-outer", format!("(ρ⋔X)∘p∘i ≠ id at ({},{})", g.id(), x.id()));
            }
        }
    }

    // pentagon
    for g1 in &v.base.probe {
        for g2 in &v.base.probe {
            for g3 in &v.base.probe {
                for x in &c.probe {
                    let lhs = c.compose(
                        &pw.p(g3, &v.tensor_obj(g1, g2), x)?,
                        &pw.pw_r(g3, &pw.p(g2, g1, x)?)?,
                    )?;
                    let rhs = c.compose_chain(&[
                        &pw.pw_l(&v.assoc(g1, g2, g3), x)?,
                        &pw.p(&v.tensor_obj(g2, g3), g1, x)?,
                        &pw.p(g3, g2, &pw.pw_obj(g1, x))?,
                    ])?;
                    if lhs != rhs {
                        rep.fail(
                            "pw-pentagon",
                            format!("at ({},{},{},{})", g1.id(), g2.id(), g3.id(), x.id()),
                        );
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// Build a powering from a left action through its currying adjunction
/// (`Power` family: Γ▷− ⊣ Γ⋔−).
pub fn powering_from_action(act: &LeftAction, adjs: &Adjunction) -> Powering {
    let v = act.v.clone();
    let c = act.c.clone();
    let pw_obj = {
        let adjs = adjs.clone();
        move |g: &Obj, x: &Obj| adjs.right_obj(g, x)
    };
    let pw_mor = {
        let adjs = adjs.clone();
        move |sigma: &Morphism, f: &Morphism| {
            // Γ⋔X → Δ⋔X → Δ⋔Y
            let shift = adjs.right_pmor(sigma, &f.dom);
            let push = adjs.right_mor(&sigma.dom, f);
            adjs.a_cat.compose(&push, &shift)
        }
    };
    let ifam = {
        let adjs = adjs.clone();
        let act = act.clone();
        let unit = v.unit.clone();
        move |x: &Obj| adjs.fwd(&unit, x, x, &act.lam(x))
    };
    let pfam = {
        let adjs = adjs.clone();
        let act = act.clone();
        let v = v.clone();
        move |g: &Obj, g1: &Obj, x: &Obj| {
            let a = adjs.right_obj(g, &adjs.right_obj(g1, x));
            let inner = act.c.compose_chain(&[
                &adjs.ev(g1, x)?,
                &act.whisker_r(g1, &adjs.ev(g, &adjs.right_obj(g1, x))?),
                &act.assoc(g1, g, &a),
            ])?;
            adjs.fwd(&v.tensor_obj(g1, g), &a, x, &inner)
        }
    };
    Powering::new(
        v,
        c,
        format!("pw({})", act.c.name),
        pw_obj,
        pw_mor,
        ifam,
        pfam,
    )
}

/// Check that the action transported through a powering built from it is
/// recovered exactly on the window: λ from i and α from p by transposition.
pub fn action_roundtrip_exact(act: &LeftAction, pw: &Powering, adjs: &Adjunction) -> Result<bool> {
    let v = &act.v;
    let c = &act.c;
    for x in &c.probe {
        let lam_hat = adjs.bwd(&v.unit, x, x, &pw.i(x)?)?;
        if lam_hat != act.lam(x) {
            return Ok(false);
        }
        for g in &v.base.probe {
            for g1 in &v.base.probe {
                let gx = act.act_obj(g, x);
                let target = act.act_obj(g1, &gx);
                // m̂ : X → (Γ′⊗Γ)⋔(Γ′▷(Γ▷X)) from the units and p
                let mhat = c.compose_chain(&[
                    &pw.p(g, g1, &target)?,
                    &pw.pw_r(g, &adjs.unit(g1, &gx)?)?,
                    &adjs.unit(g, x)?,
                ])?;
                let assoc_hat = adjs.bwd(&v.tensor_obj(g1, g), x, &target, &mhat)?;
                if assoc_hat != act.assoc(g1, g, x) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// powered functors
// ---------------------------------------------------------------------------

type PCtxFn = Rc<dyn Fn(&Obj, &Obj, &Obj, &Morphism) -> Result<Morphism>>;

/// A functor with powered structure: for f : X → Γ⋔Y a morphism
/// F⟨Γ⟩f : FX → Γ⋔FY, natural in Γ and compatible with i and p.
#[derive(Clone)]
pub struct PoweredFunctorData {
    pub pw_c: Powering,
    pub pw_d: Powering,
    pub label: String,
    on_obj: Rc<dyn Fn(&Obj) -> Obj>,
    pctx: PCtxFn,
}

impl std::fmt::Debug for PoweredFunctorData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PoweredFunctorData({})", self.label)
    }
}

impl PoweredFunctorData {
    pub fn new(
        pw_c: Powering,
        pw_d: Powering,
        label: impl Into<String>,
        on_obj: impl Fn(&Obj) -> Obj + 'static,
        pctx: impl Fn(&Obj, &Obj, &Obj, &Morphism) -> Result<Morphism> + 'static,
    ) -> PoweredFunctorData {
        PoweredFunctorData {
            pw_c,
            pw_d,
            label: label.into(),
            on_obj: Rc::new(on_obj),
            pctx: Rc::new(pctx),
        }
    }
    pub fn obj(&self, x: &Obj) -> Obj {
        (self.on_obj)(x)
    }
    /// `F⟨Γ⟩f` for f : X → Γ⋔Y (Y passed explicitly).
    pub fn pctx(&self, g: &Obj, x: &Obj, y: &Obj, f: &Morphism) -> Result<Morphism> {
        (self.pctx)(g, x, y, f)
    }
}

/// Validate the powered functor axioms on the window.
pub fn validate_powered_functor(pf: &PoweredFunctorData) -> Result<LawReport> {
    let mut rep = LawReport::default();
    let v = &pf.pw_c.v;
    let c = &pf.pw_c.c;
    let d = &pf.pw_d.c;
    for x in &c.probe {
        // preservation of i
        let fx = pf.obj(x);
        let lhs = pf.pctx(&v.unit, x, x, &pf.pw_c.i(x)?)?;
        if lhs != pf.pw_d.i(&fx)? {
            rep.fail("pfunctor-i", format!("F⟨I⟩i ≠ i at {}", x.id()));
        }
        for g in &v.base.probe {
            for y in &c.probe {
                let fy = pf.obj(y);
                // images of every window morphism into Γ⋔Y, with the
                // pointwise laws checked as they are computed
                let mut imgs: Vec<(Morphism, Morphism)> = Vec::new();
                for f in c.hom(x, &pf.pw_c.pw_obj(g, y))? {
                    let m = pf.pctx(g, x, y, &f)?;
                    if m.dom != fx || m.cod != pf.pw_d.pw_obj(g, &fy) {
                        rep.fail(
                            "pfunctor-typing",
                            format!("F⟨{}⟩ has endpoints {} -> {}", g.id(), m.dom, m.cod),
                        );
                        continue;
                    }
                    if !mor_in_category(d, &m) {
                        rep.fail(
                            "pfunctor-membership",
                            format!("F⟨{}⟩f is not a morphism of the target at ({},{})", g.id(), x.id(), y.id()),
                        );
                    }
                    imgs.push((f, m));
                }
                // naturality in the context
                for dd in &v.base.probe {
                    for sigma in v.base.hom(dd, g)? {
                        let shift_c = pf.pw_c.pw_l(&sigma, y)?;
                        let shift_d = pf.pw_d.pw_l(&sigma, &fy)?;
                        for (f, m) in &imgs {
                            let lhs = pf.pctx(dd, x, y, &c.compose(&shift_c, f)?)?;
                            let rhs = d.compose(&shift_d, m)?;
                            if lhs != rhs {
                                rep.fail(
                                    "pfunctor-natural",
                                    format!("at (σ:{}→{},{},{})", dd.id(), g.id(), x.id(), y.id()),
                                );
                            }
                        }
                    }
                }
                // compatibility with p; the composites through p depend only
                // on the inner morphism, so build them once per g0
                for g1 in &v.base.probe {
                    let g1g = v.tensor_obj(g1, g);
                    for z in &c.probe {
                        let fz = pf.obj(z);
                        let p_c = pf.pw_c.p(g, g1, z)?;
                        let p_d = pf.pw_d.p(g, g1, &fz)?;
                        for g0 in c.hom(y, &pf.pw_c.pw_obj(g1, z))? {
                            let chain_c = c.compose(&p_c, &pf.pw_c.pw_r(g, &g0)?)?;
                            let fg0 = pf.pctx(g1, y, z, &g0)?;
                            let chain_d = d.compose(&p_d, &pf.pw_d.pw_r(g, &fg0)?)?;
                            for (f, m) in &imgs {
                                let lhs = pf.pctx(&g1g, x, z, &c.compose(&chain_c, f)?)?;
                                let rhs = d.compose(&chain_d, m)?;
                                if lhs != rhs {
                                    rep.fail(
                                        "pfunctor-p",
                                        format!(
                                            "composition law fails at ({},{},{},{},{})",
                                            g.id(),
                                            g1.id(),
                                            x.id(),
                                            y.id(),
                                            z.id()
                                        ),
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// Convert a context-indexed (strong) functor to powered form through the
/// two currying adjunctions.
pub fn strong_to_powered_functor(
    cf: &CtxFunctorData,
    pw_c: &Powering,
    pw_d: &Powering,
    adjs_c: &Adjunction,
    adjs_d: &Adjunction,
) -> PoweredFunctorData {
    let cf2 = cf.clone();
    let cf3 = cf.clone();
    let adjs_c = adjs_c.clone();
    let adjs_d = adjs_d.clone();
    PoweredFunctorData::new(
        pw_c.clone(),
        pw_d.clone(),
        format!("{}-powered", cf.name),
        move |x| cf2.obj(x),
        move |g: &Obj, x: &Obj, y: &Obj, f: &Morphism| {
            let fl = adjs_c.bwd(g, x, y, f)?;
            let img = cf3.ctx(g, x, &fl)?;
            adjs_d.fwd(g, &cf3.obj(x), &cf3.obj(y), &img)
        },
    )
}

/// Convert a powered functor back to context-indexed form.
pub fn powered_to_strong_functor(
    pf: &PoweredFunctorData,
    act_c: &LeftAction,
    act_d: &LeftAction,
    adjs_c: &Adjunction,
    adjs_d: &Adjunction,
) -> CtxFunctorData {
    let pf2 = pf.clone();
    let pf3 = pf.clone();
    let adjs_c = adjs_c.clone();
    let adjs_d = adjs_d.clone();
    CtxFunctorData::new(
        format!("{}-strong", pf.label),
        act_c.clone(),
        act_d.clone(),
        move |x| pf2.obj(x),
        move |g: &Obj, x: &Obj, f: &Morphism| {
            let y = &f.cod;
            let fhat = adjs_c.fwd(g, x, y, f)?;
            let img = pf3.pctx(g, x, y, &fhat)?;
            adjs_d.bwd(g, &pf3.obj(x), &pf3.obj(y), &img)
        },
    )
}

// ---------------------------------------------------------------------------
// powered monads
// ---------------------------------------------------------------------------

/// A powered monad: object map, unit, and powered Kleisli extension taking
/// f : X → Γ⋔TY to f^⋔ : TX → Γ⋔TY.
#[derive(Clone)]
pub struct PoweredMonadData {
    pub pw: Powering,
    pub label: String,
    on_obj: Rc<dyn Fn(&Obj) -> Obj>,
    unit: Rc<dyn Fn(&Obj) -> Morphism>,
    pext: PCtxFn,
}

impl std::fmt::Debug for PoweredMonadData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PoweredMonadData({})", self.label)
    }
}

impl PoweredMonadData {
    pub fn new(
        pw: Powering,
        label: impl Into<String>,
        on_obj: impl Fn(&Obj) -> Obj + 'static,
        unit: impl Fn(&Obj) -> Morphism + 'static,
        pext: impl Fn(&Obj, &Obj, &Obj, &Morphism) -> Result<Morphism> + 'static,
    ) -> PoweredMonadData {
        PoweredMonadData {
            pw,
            label: label.into(),
            on_obj: Rc::new(on_obj),
            unit: Rc::new(unit),
            pext: Rc::new(pext),
        }
    }
    pub fn t_obj(&self, x: &Obj) -> Obj {
        (self.on_obj)(x)
    }
    pub fn eta(&self, x: &Obj) -> Morphism {
        (self.unit)(x)
    }
    /// `f^⋔ : TX → Γ⋔TY` for f : X → Γ⋔TY (Y passed explicitly).
    pub fn pext(&self, g: &Obj, x: &Obj, y: &Obj, f: &Morphism) -> Result<Morphism> {
        (self.pext)(g, x, y, f)
    }
    /// The powered functor structure T⟨Γ⟩f = ((Γ⋔η)∘f)^⋔ for f : X → Γ⋔Y.
    pub fn t_pctx(&self, g: &Obj, x: &Obj, y: &Obj, f: &Morphism) -> Result<Morphism> {
        let lifted = self.pw.c.compose(&self.pw.pw_r(g, &self.eta(y))?, f)?;
        self.pext(g, x, y, &lifted)
    }
    /// The underlying ordinary functor T₀.
    pub fn underlying_functor(&self) -> FunctorData {
        let me = self.clone();
        let me2 = self.clone();
        FunctorData::new(
            format!("{}₀", self.label),
            self.pw.c.clone(),
            self.pw.c.clone(),
            move |x| me.t_obj(x),
            move |f: &Morphism| {
                let unit = me2.pw.v.unit.clone();
                let y = &f.cod;
                let lifted = me2
                    .pw
                    .c
                    .compose(&me2.pw.i(y).expect("i"), f)
                    .expect("compose");
                let img = me2.t_pctx(&unit, &f.dom, y, &lifted).expect("t_pctx");
                me2.pw
                    .c
                    .compose(&me2.pw.i_inv(&me2.t_obj(y)).expect("i_inv"), &img)
                    .expect("compose")
            },
        )
    }
    /// The multiplication μ_X = i⁻¹∘(i_{TX})^⋔.
    pub fn mu(&self, x: &Obj) -> Result<Morphism> {
        let tx = self.t_obj(x);
        let ext = self.pext(&self.pw.v.unit, &tx, x, &self.pw.i(&tx)?)?;
        self.pw.c.compose(&self.pw.i_inv(&tx)?, &ext)
    }
}

/// Validate the powered monad laws on the window.
pub fn validate_powered_monad(m: &PoweredMonadData) -> Result<LawReport> {
    let mut rep = LawReport::default();
    let pw = &m.pw;
    let v = &pw.v;
    let c = &pw.c;
    for x in &c.probe {
        let tx = m.t_obj(x);
        let eta = m.eta(x);
        if eta.dom != *x || eta.cod != tx || !mor_in_category(c, &eta) {
            rep.fail("pmonad-unit-typing", format!("η_{} is {} -> {}", x.id(), eta.dom, eta.cod));
            continue;
        }
        // (i_{TX}∘η_X)^⋔ = i_{TX}
        let f = c.compose(&pw.i(&tx)?, &eta)?;
        if m.pext(&v.unit, x, x, &f)? != pw.i(&tx)? {
            rep.fail("pmonad-i", format!("(i∘η)^⋔ ≠ i at {}", x.id()));
        }
    }
    for g in &v.base.probe {
        for y in &c.probe {
            let ty = m.t_obj(y);
            let gty = pw.pw_obj(g, &ty);
            // extensions of every window morphism into Γ⋔TY, with the
            // pointwise laws checked as they are computed
            let mut exts: Vec<(Obj, Morphism, Morphism)> = Vec::new();
            for x in &c.probe {
                let tx = m.t_obj(x);
                let eta = m.eta(x);
                for f in c.hom(x, &gty)? {
                    let ext = m.pext(g, x, y, &f)?;
                    if ext.dom != tx || ext.cod != gty {
                        rep.fail(
                            "pmonad-pext-typing",
                            format!("f^⋔ has endpoints {} -> {}", ext.dom, ext.cod),
                        );
                        continue;
                    }
                    if !mor_in_category(c, &ext) {
                        rep.fail(
                            "pmonad-pext-membership",
                            format!("f^⋔ leaves the category at ({},{},{})", g.id(), x.id(), y.id()),
                        );
                        continue;
                    }
                    // f^⋔∘η = f
                    if c.compose(&ext, &eta)? != f {
                        rep.fail("pmonad-unit", format!("f^⋔∘η ≠ f at ({},{},{})", g.id(), x.id(), y.id()));
                    }
                    exts.push((x.clone(), f, ext));
                }
            }
            // naturality in the context
            for dd in &v.base.probe {
                for sigma in v.base.hom(dd, g)? {
                    let shift = pw.pw_l(&sigma, &ty)?;
                    for (x, f, ext) in &exts {
                        let lhs = m.pext(dd, x, y, &c.compose(&shift, f)?)?;
                        let rhs = c.compose(&shift, ext)?;
                        if lhs != rhs {
                            rep.fail(
                                "pmonad-natural",
                                format!("at (σ:{}→{},{},{})", dd.id(), g.id(), x.id(), y.id()),
                            );
                        }
                    }
                }
            }
            // p-composition law; the composites through p depend only on the
            // inner extension, so build them once per g0
            for g1 in &v.base.probe {
                let g1g = v.tensor_obj(g1, g);
                for z in &c.probe {
                    let tz = m.t_obj(z);
                    let p = pw.p(g, g1, &tz)?;
                    for g0 in c.hom(y, &pw.pw_obj(g1, &tz))? {
                        let g0ext = m.pext(g1, y, z, &g0)?;
                        let chain = c.compose(&p, &pw.pw_r(g, &g0ext)?)?;
                        for (x, f, ext) in &exts {
                            let lhs = c.compose(&chain, ext)?;
                            let rhs = m.pext(&g1g, x, z, &c.compose(&chain, f)?)?;
                            if lhs != rhs {
                                rep.fail(
                                    "pmonad-assoc",
                                    format!(
                                        "p-composition fails at ({},{},{},{},{})",
                                        g.id(),
                                        g1.id(),
                                        x.id(),
                                        y.id(),
                                        z.id()
                                    ),
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

/// Whether `tau` is a morphism of powered monads S ⇒ T.
pub fn is_powered_monad_morphism(
    tau: &dyn Fn(&Obj) -> Morphism,
    s: &PoweredMonadData,
    t: &PoweredMonadData,
) -> Result<bool> {
    let pw = &s.pw;
    let v = &pw.v;
    let c = &pw.c;
    for x in &c.probe {
        if c.compose(&tau(x), &s.eta(x))? != t.eta(x) {
            return Ok(false);
        }
        for g in &v.base.probe {
            for y in &c.probe {
                let sy = s.t_obj(y);
                let shift = pw.pw_r(g, &tau(y))?; // Γ⋔SY → Γ⋔TY
                for f in c.hom(x, &pw.pw_obj(g, &sy))? {
                    let lhs = c.compose(&shift, &s.pext(g, x, y, &f)?)?;
                    let rhs = c.compose(
                        &t.pext(g, x, y, &c.compose(&shift, &f)?)?,
                        &tau(x),
                    )?;
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Convert a strong monad (Kleisli form) to powered form.
pub fn strong_to_powered_monad(
    m: &KleisliStrongMonad,
    pw: &Powering,
    adjs: &Adjunction,
) -> PoweredMonadData {
    let m2 = m.clone();
    let m3 = m.clone();
    let m4 = m.clone();
    let adjs = adjs.clone();
    PoweredMonadData::new(
        pw.clone(),
        format!("{}-powered", m.label),
        move |x| m2.t_obj(x),
        move |x| m3.eta(x),
        move |g: &Obj, x: &Obj, y: &Obj, f: &Morphism| {
            let ty = m4.t_obj(y);
            let fl = adjs.bwd(g, x, &ty, f)?;
            let ext = m4.extend(g, x, y, &fl)?;
            adjs.fwd(g, &m4.t_obj(x), &ty, &ext)
        },
    )
}

/// Convert a powered monad back to Kleisli strong form.
pub fn powered_to_strong_monad(
    pm: &PoweredMonadData,
    act: &LeftAction,
    adjs: &Adjunction,
) -> KleisliStrongMonad {
    let p2 = pm.clone();
    let p3 = pm.clone();
    let p4 = pm.clone();
    let adjs = adjs.clone();
    KleisliStrongMonad::new(
        act.clone(),
        format!("{}-strong", pm.label),
        move |x| p2.t_obj(x),
        move |x| p3.eta(x),
        move |g: &Obj, x: &Obj, y: &Obj, f: &Morphism| {
            let ty = p4.t_obj(y);
            let fhat = adjs.fwd(g, x, &ty, f)?;
            let ext = p4.pext(g, x, y, &fhat)?;
            adjs.bwd(g, &p4.t_obj(x), &ty, &ext)
        },
    )
}

// ---------------------------------------------------------------------------
// liftings to categories of algebras
// ---------------------------------------------------------------------------

/// The Eilenberg–Moore category of a monad, as an algebra category whose
/// admission test enforces the unit and multiplication laws.
pub fn em_category(md: &MonadData) -> Result<AlgebraCategory> {
    let t1 = md.functor.clone();
    let t2 = md.functor.clone();
    let t3 = md.functor.clone();
    let unit = md.unit.clone();
    let mult = md.mult.clone();
    let c = md.functor.source.clone();
    algebra_category(
        format!("EM({})", md.functor.name),
        c.clone(),
        Rc::new(move |x: &Obj| t1.obj(x)),
        Rc::new(move |m: &Morphism| t2.mor(m)),
        Rc::new(move |a: &Obj, s: &Morphism| {
            let u = c.compose(s, &unit.at(a))? == c.identity(a);
            let m = c.compose(s, &mult.at(a))? == c.compose(s, &t3.mor(s))?;
            Ok(u && m)
        }),
    )
}

fn as_lifting_error(e: LabError) -> LabError {
    match e {
        LabError::ValidationFailed(d) => LabError::LiftingSquareBroken(d),
        other => other,
    }
}

/// Lift an Eilenberg–Moore algebra along the powering of a powered monad:
/// the carrier Γ⋔A gets the structure (Γ⋔a)∘T⟨Γ⟩id. Registration fails
/// with `LiftingSquareBroken` if the lifted structure violates the algebra
/// laws (which happens exactly when the powered monad data is unlawful).
pub fn em_lift_algebra(
    pm: &PoweredMonadData,
    em: &AlgebraCategory,
    g: &Obj,
    alg: &Obj,
) -> Result<Obj> {
    let (a, s) = em.lookup(alg)?;
    let ga = pm.pw.pw_obj(g, &a);
    let tid = pm.t_pctx(g, &ga, &a, &pm.pw.c.identity(&ga))?;
    let lifted = pm.pw.c.compose(&pm.pw.pw_r(g, &s)?, &tid)?;
    em.register(&ga, &lifted).map_err(as_lifting_error)
}

/// Check, on the window, that the lifting determines the powered extension:
/// f^⋔ equals the lifted structure on Γ⋔TY applied after T₀f, where the
/// lifted algebra is the free one (TY, μ_Y).
pub fn em_lifting_recovers_pext(pm: &PoweredMonadData, em: &AlgebraCategory) -> Result<bool> {
    let pw = &pm.pw;
    let c = &pw.c;
    let t0 = pm.underlying_functor();
    for y in &c.probe {
        let ty = pm.t_obj(y);
        let free = em.register(&ty, &pm.mu(y)?)?;
        for g in &pw.v.base.probe {
            let lifted = em_lift_algebra(pm, em, g, &free)?;
            let (_, s) = em.lookup(&lifted)?;
            for x in &c.probe {
                for f in c.hom(x, &pw.pw_obj(g, &ty))? {
                    if pm.pext(g, x, y, &f)? != c.compose(&s, &t0.mor(&f))? {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Lift an algebra for a powered endofunctor F along the powering:
/// Γ⋔(A,a) has carrier Γ⋔A and structure (Γ⋔a)∘F⟨Γ⟩id.
pub fn falg_lift_algebra(
    pf: &PoweredFunctorData,
    falg: &AlgebraCategory,
    g: &Obj,
    alg: &Obj,
) -> Result<Obj> {
    let (a, s) = falg.lookup(alg)?;
    let ga = pf.pw_c.pw_obj(g, &a);
    let fid = pf.pctx(g, &ga, &a, &pf.pw_c.c.identity(&ga))?;
    let lifted = pf.pw_c.c.compose(&pf.pw_c.pw_r(g, &s)?, &fid)?;
    falg.register(&ga, &lifted).map_err(as_lifting_error)
}

/// Build the powered structure of the algebraically free monad on a powered
/// endofunctor F. The free monad T is supplied as ordinary monad data, and
/// the equivalence between T-algebras and F-algebras is supplied as a pair
/// of structure-map translations on a fixed carrier.
pub fn free_powered_monad(
    pf: &PoweredFunctorData,
    md: &MonadData,
    label: impl Into<String>,
    to_falg: impl Fn(&Obj, &Morphism) -> Result<Morphism> + 'static,
    to_em: impl Fn(&Obj, &Morphism) -> Result<Morphism> + 'static,
) -> PoweredMonadData {
    let pw = pf.pw_c.clone();
    let t1 = md.functor.clone();
    let t2 = md.functor.clone();
    let unit = md.unit.clone();
    let mult = md.mult.clone();
    let pf1 = pf.clone();
    PoweredMonadData::new(
        pw.clone(),
        label,
        move |x: &Obj| t1.obj(x),
        move |x: &Obj| unit.at(x),
        move |g: &Obj, x: &Obj, y: &Obj, f: &Morphism| {
            let c = &pf1.pw_c.c;
            let ty = t2.obj(y);
            // translate the free algebra (TY, μ_Y) to an F-algebra, lift it
            // along the powering of F, and translate back
            let b = to_falg(&ty, &mult.at(y))?;
            let gty = pf1.pw_c.pw_obj(g, &ty);
            let fid = pf1.pctx(g, &gty, &ty, &c.identity(&gty))?;
            let lifted_f = c.compose(&pf1.pw_c.pw_r(g, &b)?, &fid)?;
            let s = to_em(&gty, &lifted_f)?;
            debug_assert_eq!(f.dom, *x);
            c.compose(&s, &t2.mor(f))
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::self_action;
    use crate::bounds::Bounds;
    use crate::core::Elem;
    use crate::corpus::{
        bool2, bool2_meet, concrete_coproduct, const_strength, curry_adjunction, exc_strength,
        exc_strong_monad, exp_for, finset, finset_cartesian, finset_obj, identity_strong_monad,
        square_strength, terminal_strong_monad, writer_z2_monad, z2act,
        z2act_cartesian, CurryFamily, WriterForm,
    };
    use crate::strength::strength_to_ctxform;
    use crate::strongmonad::{underlying_monad, validate_strong_monad};

    fn finset_setup() -> (LeftAction, Adjunction, Powering) {
        let c = finset(Bounds::default());
        let act = self_action(&finset_cartesian(&c).unwrap());
        let adjs = curry_adjunction(&act, CurryFamily::Power, exp_for("finset"));
        let pw = powering_from_action(&act, &adjs);
        (act, adjs, pw)
    }

    #[test]
    fn finset_powering_validates() {
        let (_, _, pw) = finset_setup();
        let rep = validate_powering(&pw).unwrap();
        assert!(rep.pass(), "{}", rep.summary());
    }

    #[test]
    fn bool2_powering_validates() {
        let c = bool2(Bounds::default());
        let act = self_action(&bool2_meet(&c).unwrap());
        let adjs = curry_adjunction(&act, CurryFamily::Power, exp_for("bool2"));
        let pw = powering_from_action(&act, &adjs);
        let rep = validate_powering(&pw).unwrap();
        assert!(rep.pass(), "{}", rep.summary());
    }

    #[test]
    fn z2act_powering_validates_and_action_roundtrips() {
        let c = z2act(Bounds::default());
        let act = self_action(&z2act_cartesian(&c).unwrap());
        let adjs = curry_adjunction(&act, CurryFamily::Power, exp_for("z2act"));
        let pw = powering_from_action(&act, &adjs);
        let rep = validate_powering(&pw).unwrap();
        assert!(rep.pass(), "{}", rep.summary());
        assert!(action_roundtrip_exact(&act, &pw, &adjs).unwrap());
    }

    #[test]
    fn finset_action_roundtrip_exact() {
        let (act, adjs, pw) = finset_setup();
        assert!(action_roundtrip_exact(&act, &pw, &adjs).unwrap());
    }

    #[test]
    fn collapsed_p_fails_validation() {
        let (_, _, pw) = finset_setup();
        let good = pw.clone();
        let bad = Powering::new(
            pw.v.clone(),
            pw.c.clone(),
            "finset-collapsed-p",
            {
                let g = good.clone();
                move |a: &Obj, x: &Obj| g.pw_obj(a, x)
            },
            {
                let g = good.clone();
                move |s: &Morphism, f: &Morphism| g.pw_mor(s, f)
            },
            {
                let g = good.clone();
                move |x: &Obj| g.i(x)
            },
            {
                let g = good.clone();
                move |ga: &Obj, g1: &Obj, x: &Obj| {
                    let p = g.p(ga, g1, x)?;
                    // collapse to a constant map with the same endpoints
                    match p.cod.carrier().first() {
                        Some(e0) => Ok(Morphism::new(
                            p.dom.clone(),
                            p.cod.clone(),
                            p.dom
                                .carrier()
                                .iter()
                                .map(|e| (e.clone(), e0.clone()))
                                .collect::<Vec<_>>(),
                        )),
                        None => Ok(p),
                    }
                }
            },
        );
        let rep = validate_powering(&bad).unwrap();
        assert!(!rep.pass());
        assert!(rep
            .failures
            .iter()
            .any(|f| f.law.starts_with("pw-p") || f.law == "pw-pentagon" || f.law.starts_with("pw-unit")));
    }

    #[test]
    fn exc_and_square_powered_functors_validate_and_roundtrip() {
        let (act, adjs, pw) = finset_setup();
        let e = finset_obj(2);
        for s in [exc_strength(&act, &e), square_strength(&act)] {
            let cf = strength_to_ctxform(&s);
            let pfd = strong_to_powered_functor(&cf, &pw, &pw, &adjs, &adjs);
            let rep = validate_powered_functor(&pfd).unwrap();
            assert!(rep.pass(), "{}: {}", cf.name, rep.summary());
            // exact round trip back to context-indexed form
            let back = powered_to_strong_functor(&pfd, &act, &act, &adjs, &adjs);
            for g in &act.v.base.probe {
                for x in &act.c.probe {
                    for y in &act.c.probe {
                        for f in act.c.hom(&act.act_obj(g, x), y).unwrap() {
                            assert_eq!(
                                back.ctx(g, x, &f).unwrap(),
                                cf.ctx(g, x, &f).unwrap(),
                                "round trip mismatch for {}",
                                cf.name
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn powered_monads_validate() {
        let (act, adjs, pw) = finset_setup();
        for m in [
            identity_strong_monad(&act),
            exc_strong_monad(&act, &finset_obj(1)),
            terminal_strong_monad(&act, &finset_obj(1)),
        ] {
            let pm = strong_to_powered_monad(&m, &pw, &adjs);
            let rep = validate_powered_monad(&pm).unwrap();
            assert!(rep.pass(), "{}: {}", m.label, rep.summary());
        }
    }

    #[test]
    fn corrupted_pext_fails_validation() {
        let (act, adjs, pw) = finset_setup();
        let m = exc_strong_monad(&act, &finset_obj(1));
        let good = strong_to_powered_monad(&m, &pw, &adjs);
        let g2 = good.clone();
        let g3 = good.clone();
        let g4 = good.clone();
        let bad = PoweredMonadData::new(
            pw.clone(),
            "exc-corrupt",
            move |x: &Obj| g2.t_obj(x),
            move |x: &Obj| g3.eta(x),
            move |g: &Obj, x: &Obj, y: &Obj, f: &Morphism| {
                let ext = g4.pext(g, x, y, f)?;
                // post-compose with the carrier-reversing bijection on Γ⋔TY
                let cod = ext.cod.clone();
                let n = cod.carrier().len();
                let twist = Morphism::new(
                    cod.clone(),
                    cod.clone(),
                    cod.carrier()
                        .iter()
                        .enumerate()
                        .map(|(i, e)| (e.clone(), cod.carrier()[n - 1 - i].clone()))
                        .collect::<Vec<_>>(),
                );
                g4.pw.c.compose(&twist, &ext)
            },
        );
        let rep = validate_powered_monad(&bad).unwrap();
        assert!(!rep.pass());
    }

    #[test]
    fn strong_powered_roundtrip_exact() {
        let (act, adjs, pw) = finset_setup();
        for m in [
            identity_strong_monad(&act),
            exc_strong_monad(&act, &finset_obj(2)),
            terminal_strong_monad(&act, &finset_obj(1)),
        ] {
            let pm = strong_to_powered_monad(&m, &pw, &adjs);
            let back = powered_to_strong_monad(&pm, &act, &adjs);
            for g in &act.v.base.probe {
                for x in &act.c.probe {
                    for y in &act.c.probe {
                        let ty = m.t_obj(y);
                        for f in act.c.hom(&act.act_obj(g, x), &ty).unwrap() {
                            assert_eq!(
                                back.extend(g, x, y, &f).unwrap(),
                                m.extend(g, x, y, &f).unwrap(),
                                "round trip mismatch for {}",
                                m.label
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn writer_forms_give_distinct_powered_monads() {
        let c = z2act(Bounds::default());
        let act = self_action(&z2act_cartesian(&c).unwrap());
        let adjs = curry_adjunction(&act, CurryFamily::Power, exp_for("z2act"));
        let pw = powering_from_action(&act, &adjs);
        let canon = strong_to_powered_monad(&writer_z2_monad(&act, WriterForm::Canonical), &pw, &adjs);
        let twist = strong_to_powered_monad(&writer_z2_monad(&act, WriterForm::Twisted), &pw, &adjs);
        assert!(validate_powered_monad(&canon).unwrap().pass());
        assert!(validate_powered_monad(&twist).unwrap().pass());
        // both are lawful yet differ as powered structures on the same functor
        let mut differ = false;
        'outer: for g in &act.v.base.probe {
            for x in &act.c.probe {
                for y in &act.c.probe {
                    let ty = canon.t_obj(y);
                    for f in act.c.hom(x, &pw.pw_obj(g, &ty)).unwrap() {
                        if canon.pext(g, x, y, &f).unwrap() != twist.pext(g, x, y, &f).unwrap() {
                            differ = true;
                            break 'outer;
                        }
                    }
                }
            }
        }
        assert!(differ);
        let id_tau = {
            let canon = canon.clone();
            move |x: &Obj| act.c.identity(&canon.t_obj(x))
        };
        assert!(!is_powered_monad_morphism(&id_tau, &canon, &twist).unwrap());
    }

    #[test]
    fn em_category_object_counts() {
        let (act, _, _) = finset_setup();
        // exception monad with one error: algebras = choices of a recovery
        // point, one per carrier element (0 + 1 + 2 over sizes 0,1,2)
        let exc = underlying_monad(&exc_strong_monad(&act, &finset_obj(1)));
        let em = em_category(&exc).unwrap();
        assert_eq!(em.cat.objects().unwrap().len(), 3);
        // identity monad: exactly one algebra per object
        let idm = underlying_monad(&identity_strong_monad(&act));
        let em = em_category(&idm).unwrap();
        assert_eq!(em.cat.objects().unwrap().len(), 3);
        // terminal monad: only the singleton carries an algebra
        let term = underlying_monad(&terminal_strong_monad(&act, &finset_obj(1)));
        let em = em_category(&term).unwrap();
        assert_eq!(em.cat.objects().unwrap().len(), 1);
    }

    #[test]
    fn em_lifting_recovers_the_powered_extension() {
        let (act, adjs, pw) = finset_setup();
        for m in [
            identity_strong_monad(&act),
            exc_strong_monad(&act, &finset_obj(1)),
        ] {
            let pm = strong_to_powered_monad(&m, &pw, &adjs);
            let em = em_category(&underlying_monad(&m)).unwrap();
            assert!(em_lifting_recovers_pext(&pm, &em).unwrap(), "{}", m.label);
        }
    }

    #[test]
    fn unlawful_lifting_is_reported() {
        let (act, adjs, pw) = finset_setup();
        let m = exc_strong_monad(&act, &finset_obj(1));
        let em = em_category(&underlying_monad(&m)).unwrap();
        let good = strong_to_powered_monad(&m, &pw, &adjs);
        let g2 = good.clone();
        let g3 = good.clone();
        let g4 = good.clone();
        // corrupt T⟨Γ⟩ via pext so the lifted structure fails the algebra laws
        let bad = PoweredMonadData::new(
            pw.clone(),
            "exc-bad-lift",
            move |x: &Obj| g2.t_obj(x),
            move |x: &Obj| g3.eta(x),
            move |g: &Obj, x: &Obj, y: &Obj, f: &Morphism| {
                let ext = g4.pext(g, x, y, f)?;
                let cod = ext.cod.clone();
                let n = cod.carrier().len();
                let twist = Morphism::new(
                    cod.clone(),
                    cod.clone(),
                    cod.carrier()
                        .iter()
                        .enumerate()
                        .map(|(i, e)| (e.clone(), cod.carrier()[n - 1 - i].clone()))
                        .collect::<Vec<_>>(),
                );
                g4.pw.c.compose(&twist, &ext)
            },
        );
        let two = finset_obj(2);
        let free = em.register(&good.t_obj(&two), &good.mu(&two).unwrap()).unwrap();
        let g = finset_obj(2);
        let res = em_lift_algebra(&bad, &em, &g, &free);
        assert!(matches!(res, Err(LabError::LiftingSquareBroken(_))));
    }

    #[test]
    fn free_monad_on_constant_functor_is_powered() {
        let (act, adjs, pw) = finset_setup();
        for esize in [0usize, 1] {
            let e = finset_obj(esize);
            // the constant functor at E, with its canonical powered structure
            let cf = strength_to_ctxform(&const_strength(&act, &e));
            let pfd = strong_to_powered_functor(&cf, &pw, &pw, &adjs, &adjs);
            assert!(validate_powered_functor(&pfd).unwrap().pass());
            // its algebraically free monad is X ↦ X + E
            let strong = exc_strong_monad(&act, &e);
            let md = underlying_monad(&strong);
            let e1 = e.clone();
            let e2 = e.clone();
            let free = free_powered_monad(
                &pfd,
                &md,
                format!("free-const-{}", esize),
                // T-algebra structure a : A+E → A restricts to h = a∘inr
                move |a: &Obj, s: &Morphism| {
                    let inr = concrete_coproduct(
                        &Obj::new(a.id().to_string(), {
                            // recover the base A of the coproduct carrier A+E
                            a.carrier()
                                .iter()
                                .filter_map(|el| match el {
                                    Elem::Inl(x) => Some((**x).clone()),
                                    _ => None,
                                })
                                .collect::<Vec<_>>()
                        }),
                        &e1,
                    );
                    let _ = inr;
                    Ok(Morphism::new(
                        e1.clone(),
                        s.cod.clone(),
                        e1.carrier()
                            .iter()
                            .map(|el| (el.clone(), s.apply(&Elem::inr(el.clone()))))
                            .collect::<Vec<_>>(),
                    ))
                },
                // an F-algebra h : E → A extends to [id, h] : A+E → A
                move |a: &Obj, h: &Morphism| {
                    let (ae, _, _) = concrete_coproduct(a, &e2);
                    Ok(Morphism::new(
                        ae.clone(),
                        a.clone(),
                        ae.carrier()
                            .iter()
                            .map(|el| match el {
                                Elem::Inl(x) => (el.clone(), (**x).clone()),
                                Elem::Inr(y) => (el.clone(), h.apply(y)),
                                _ => unreachable!(),
                            })
                            .collect::<Vec<_>>(),
                    ))
                },
            );
            assert!(validate_powered_monad(&free).unwrap().pass());
            // it agrees with the powered form of the exception strong monad
            let direct = strong_to_powered_monad(&strong, &pw, &adjs);
            for g in &act.v.base.probe {
                for x in &act.c.probe {
                    for y in &act.c.probe {
                        let ty = direct.t_obj(y);
                        for f in act.c.hom(x, &pw.pw_obj(g, &ty)).unwrap() {
                            assert_eq!(
                                free.pext(g, x, y, &f).unwrap(),
                                direct.pext(g, x, y, &f).unwrap()
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn exc_falg_lifting_exists() {
        let (act, adjs, pw) = finset_setup();
        let e = finset_obj(1);
        let cf = strength_to_ctxform(&const_strength(&act, &e));
        let pfd = strong_to_powered_functor(&cf, &pw, &pw, &adjs, &adjs);
        let f0 = cf.underlying();
        let falg = crate::strongmonad::falg_category(&f0).unwrap();
        // every algebra on the window lifts along every context
        let objs = falg.cat.objects().unwrap();
        assert!(!objs.is_empty());
        for alg in objs {
            for g in &act.v.base.probe {
                let lifted = falg_lift_algebra(&pfd, &falg, g, alg).unwrap();
                let (carrier, _) = falg.lookup(&lifted).unwrap();
                let (base, _) = falg.lookup(alg).unwrap();
                assert_eq!(carrier.id(), pw.pw_obj(g, &base).id());
            }
        }
    }

    #[test]
    fn writer_monads_validate_strongly_before_conversion() {
        // sanity anchor: the two writer forms are lawful strong monads, so
        // the distinction observed in powered form is not a conversion bug
        let c = z2act(Bounds::default());
        let act = self_action(&z2act_cartesian(&c).unwrap());
        for form in [WriterForm::Canonical, WriterForm::Twisted] {
            let m = writer_z2_monad(&act, form);
            assert!(validate_strong_monad(&m).unwrap().pass());
        }
    }
}
