//! Right actions, two-sided (bi)actions, bistrengths, and commutativity of
//! strong monads on braided bases, with the induced lax monoidal structure.

use std::rc::Rc;

use crate::action::LeftAction;
use crate::core::{
    pair_mor, pair_obj, product_category, validate_functor, FunctorData, LawReport, Morphism, Obj,
};
use crate::error::{LabError, Result};
use crate::monoidal::{invert, MonoidalStructure};
use crate::strength::Strength;
use crate::strongmonad::{underlying_monad, KleisliStrongMonad};

type UnFam = Rc<dyn Fn(&Obj) -> Morphism>;
type TriFam = Rc<dyn Fn(&Obj, &Obj, &Obj) -> Morphism>;

// ---------------------------------------------------------------------------
// right actions
// ---------------------------------------------------------------------------

/// A right action ◁ : 𝒞 × 𝒱 → 𝒞 with unit iso ρ_X : X → X◁I and
/// associativity iso α_{X,Γ,Δ} : (X◁Γ)◁Δ → X◁(Γ⊗Δ).
#[derive(Clone)]
pub struct RightAction {
    pub v: MonoidalStructure,
    pub c: Category,
    pub act: FunctorData,
    rho: UnFam,
    assoc: TriFam,
}

use crate::core::Category;

impl RightAction {
    pub fn new(
        v: MonoidalStructure,
        c: Category,
        act: FunctorData,
        rho: impl Fn(&Obj) -> Morphism + 'static,
        assoc: impl Fn(&Obj, &Obj, &Obj) -> Morphism + 'static,
    ) -> RightAction {
        RightAction {
            v,
            c,
            act,
            rho: Rc::new(rho),
            assoc: Rc::new(assoc),
        }
    }
    pub fn act_obj(&self, x: &Obj, g: &Obj) -> Obj {
        self.act.obj(&pair_obj(x, g))
    }
    pub fn act_mor(&self, u: &Morphism, f: &Morphism) -> Morphism {
        let dom = pair_obj(&u.dom, &f.dom);
        let cod = pair_obj(&u.cod, &f.cod);
        self.act.mor(&pair_mor(&dom, &cod, u, f))
    }
    /// `u ◁ Γ` for a 𝒞-morphism u and 𝒱-object Γ.
    pub fn whisker_l(&self, u: &Morphism, g: &Obj) -> Morphism {
        self.act_mor(u, &self.v.base.identity(g))
    }
    /// `X ◁ γ` for a 𝒞-object X and 𝒱-morphism γ.
    pub fn whisker_r(&self, x: &Obj, f: &Morphism) -> Morphism {
        self.act_mor(&self.c.identity(x), f)
    }
    pub fn rho(&self, x: &Obj) -> Morphism {
        (self.rho)(x)
    }
    pub fn rho_inv(&self, x: &Obj) -> Result<Morphism> {
        invert(&self.c, &self.rho(x))
    }
    pub fn assoc(&self, x: &Obj, g1: &Obj, g2: &Obj) -> Morphism {
        (self.assoc)(x, g1, g2)
    }
    pub fn assoc_inv(&self, x: &Obj, g1: &Obj, g2: &Obj) -> Result<Morphism> {
        invert(&self.c, &self.assoc(x, g1, g2))
    }
}

/// The right self-action of a monoidal category: ◁ = ⊗.
pub fn self_right_action(m: &MonoidalStructure) -> RightAction {
    let m1 = m.clone();
    let m2 = m.clone();
    RightAction::new(
        m.clone(),
        m.base.clone(),
        m.tensor.clone(),
        move |x: &Obj| m1.rho(x),
        move |x: &Obj, g1: &Obj, g2: &Obj| m2.assoc(x, g1, g2),
    )
}

/// Check a right action's functoriality, the invertibility/naturality of ρ
/// and α, and the unit/pentagon coherences, over the probe window.
pub fn validate_right_action(a: &RightAction) -> Result<LawReport> {
    let mut rep = LawReport::default();
    let vb = &a.v.base;
    let c = &a.c;

    // ◁ is a functor on 𝒞 × 𝒱
    let prod = product_category(c, vb);
    let act = FunctorData::new(
        a.act.name.clone(),
        prod,
        c.clone(),
        {
            let f = a.act.clone();
            move |x| f.obj(x)
        },
        {
            let f = a.act.clone();
            move |m| f.mor(m)
        },
    );
    rep.merge(validate_functor(&act)?);

    // ρ typing, invertibility, naturality
    for x in &c.probe {
        let r = a.rho(x);
        if r.dom != *x || r.cod != a.act_obj(x, &a.v.unit) {
            rep.fail("raction-rho-typing", format!("ρ_{x}"));
            continue;
        }
        if invert(c, &r).is_err() {
            rep.fail("raction-rho-iso", format!("ρ_{x} is not invertible"));
        }
        for y in &c.probe {
            for u in c.hom(x, y)? {
                let lhs = c.compose(&a.whisker_l(&u, &a.v.unit), &a.rho(x))?;
                let rhs = c.compose(&a.rho(y), &u)?;
                if lhs != rhs {
                    rep.fail("raction-rho-natural", format!("at {u}"));
                }
            }
        }
    }

    // α typing, invertibility, componentwise naturality
    for g1 in &vb.probe {
        for g2 in &vb.probe {
            for x in &c.probe {
                let al = a.assoc(x, g1, g2);
                if al.dom != a.act_obj(&a.act_obj(x, g1), g2)
                    || al.cod != a.act_obj(x, &a.v.tensor_obj(g1, g2))
                {
                    rep.fail("raction-assoc-typing", format!("α_{{{x},{g1},{g2}}}"));
                    continue;
                }
                if invert(c, &al).is_err() {
                    rep.fail(
                        "raction-assoc-iso",
                        format!("α_{{{x},{g1},{g2}}} is not invertible"),
                    );
                }
                // naturality in X
                for y in &c.probe {
                    for u in c.hom(x, y)? {
                        let lhs = c.compose(
                            &a.whisker_l(&u, &a.v.tensor_obj(g1, g2)),
                            &a.assoc(x, g1, g2),
                        )?;
                        let rhs = c.compose(
                            &a.assoc(y, g1, g2),
                            &a.whisker_l(&a.whisker_l(&u, g1), g2),
                        )?;
                        if lhs != rhs {
                            rep.fail("raction-assoc-natural-x", format!("at {u}"));
                        }
                    }
                }
                // naturality in Γ₁ and Γ₂
                for d in &vb.probe {
                    for sig in vb.hom(g1, d)? {
                        let lhs = c.compose(
                            &a.whisker_r(x, &a.v.tensor_mor(&sig, &vb.identity(g2))),
                            &a.assoc(x, g1, g2),
                        )?;
                        let rhs = c.compose(
                            &a.assoc(x, d, g2),
                            &a.whisker_l(&a.whisker_r(x, &sig), g2),
                        )?;
                        if lhs != rhs {
                            rep.fail("raction-assoc-natural-1", format!("at {sig}"));
                        }
                    }
                    for sig in vb.hom(g2, d)? {
                        let lhs = c.compose(
                            &a.whisker_r(x, &a.v.tensor_mor(&vb.identity(g1), &sig)),
                            &a.assoc(x, g1, g2),
                        )?;
                        let rhs = c.compose(
                            &a.assoc(x, g1, d),
                            &a.whisker_r(&a.act_obj(x, g1), &sig),
                        )?;
                        if lhs != rhs {
                            rep.fail("raction-assoc-natural-2", format!("at {sig}"));
                        }
                    }
                }
            }
        }
    }

    // unit coherences: (X◁λ_Γ)∘α_{X,I,Γ}∘(ρ_X◁Γ) = id_{X◁Γ}
    // and α_{X,Γ,I}∘ρ_{X◁Γ} = X◁ρ_Γ
    for g in &vb.probe {
        for x in &c.probe {
            let xg = a.act_obj(x, g);
            let lhs = c.compose_chain(&[
                &a.whisker_r(x, &a.v.lam(g)),
                &a.assoc(x, &a.v.unit, g),
                &a.whisker_l(&a.rho(x), g),
            ])?;
            if lhs != c.identity(&xg) {
                rep.fail("raction-unit-left", format!("at ({x},{g})"));
            }
            let lhs = c.compose(&a.assoc(x, g, &a.v.unit), &a.rho(&xg))?;
            let rhs = a.whisker_r(x, &a.v.rho(g));
            if lhs != rhs {
                rep.fail("raction-unit-right", format!("at ({x},{g})"));
            }
        }
    }

    // pentagon-like coherence
    for g1 in &vb.probe {
        for g2 in &vb.probe {
            for g3 in &vb.probe {
                for x in &c.probe {
                    let top = c.compose_chain(&[
                        &a.whisker_r(x, &a.v.assoc(g1, g2, g3)),
                        &a.assoc(x, &a.v.tensor_obj(g1, g2), g3),
                        &a.whisker_l(&a.assoc(x, g1, g2), g3),
                    ])?;
                    let bottom = c.compose(
                        &a.assoc(x, g1, &a.v.tensor_obj(g2, g3)),
                        &a.assoc(&a.act_obj(x, g1), g2, g3),
                    )?;
                    if top != bottom {
                        rep.fail("raction-pentagon", format!("at ({x},{g1},{g2},{g3})"));
                    }
                }
            }
        }
    }

    Ok(rep)
}

// ---------------------------------------------------------------------------
// biactions
// ---------------------------------------------------------------------------

/// Compatible left and right actions on the same category, with a middle
/// interchange iso m_{Γ,X,Δ} : (Γ▷X)◁Δ → Γ▷(X◁Δ).
#[derive(Clone)]
pub struct Biaction {
    pub left: LeftAction,
    pub right: RightAction,
    mid: TriFam,
}

impl Biaction {
    pub fn new(
        left: LeftAction,
        right: RightAction,
        mid: impl Fn(&Obj, &Obj, &Obj) -> Morphism + 'static,
    ) -> Biaction {
        Biaction {
            left,
            right,
            mid: Rc::new(mid),
        }
    }
    pub fn mid(&self, g: &Obj, x: &Obj, d: &Obj) -> Morphism {
        (self.mid)(g, x, d)
    }
    pub fn mid_inv(&self, g: &Obj, x: &Obj, d: &Obj) -> Result<Morphism> {
        invert(&self.left.c, &self.mid(g, x, d))
    }
}

/// The two-sided self-action of a monoidal category, with the associator
/// as the middle interchange.
pub fn self_biaction(m: &MonoidalStructure) -> Biaction {
    let m1 = m.clone();
    Biaction::new(
        crate::action::self_action(m),
        self_right_action(m),
        move |g: &Obj, x: &Obj, d: &Obj| m1.assoc(g, x, d),
    )
}

/// Check both actions, the interchange iso's typing/invertibility and
/// naturality, and the four coherence diagrams tying it to the unit and
/// associativity isos.
pub fn validate_biaction(b: &Biaction) -> Result<LawReport> {
    let mut rep = LawReport::default();
    let l = &b.left;
    let r = &b.right;
    let vb = &l.v.base;
    let c = &l.c;

    rep.merge(crate::action::validate_action(l)?);
    rep.merge(validate_right_action(r)?);

    for g in &vb.probe {
        for x in &c.probe {
            for d in &vb.probe {
                let m = b.mid(g, x, d);
                if m.dom != r.act_obj(&l.act_obj(g, x), d)
                    || m.cod != l.act_obj(g, &r.act_obj(x, d))
                {
                    rep.fail("biaction-mid-typing", format!("m_{{{g},{x},{d}}}"));
                    continue;
                }
                if invert(c, &m).is_err() {
                    rep.fail("biaction-mid-iso", format!("m_{{{g},{x},{d}}}"));
                }
                // naturality in each argument
                for g2 in &vb.probe {
                    for sig in vb.hom(g, g2)? {
                        let lhs = c.compose(
                            &l.whisker_l(&sig, &r.act_obj(x, d)),
                            &b.mid(g, x, d),
                        )?;
                        let rhs = c.compose(
                            &b.mid(g2, x, d),
                            &r.whisker_l(&l.whisker_l(&sig, x), d),
                        )?;
                        if lhs != rhs {
                            rep.fail("biaction-mid-natural-ctx", format!("at {sig}"));
                        }
                    }
                    for sig in vb.hom(d, g2)? {
                        let lhs = c.compose(
                            &l.whisker_r(g, &r.whisker_r(x, &sig)),
                            &b.mid(g, x, d),
                        )?;
                        let rhs = c.compose(
                            &b.mid(g, x, g2),
                            &r.whisker_r(&l.act_obj(g, x), &sig),
                        )?;
                        if lhs != rhs {
                            rep.fail("biaction-mid-natural-rctx", format!("at {sig}"));
                        }
                    }
                }
                for y in &c.probe {
                    for u in c.hom(x, y)? {
                        let lhs = c.compose(
                            &l.whisker_r(g, &r.whisker_l(&u, d)),
                            &b.mid(g, x, d),
                        )?;
                        let rhs = c.compose(
                            &b.mid(g, y, d),
                            &r.whisker_l(&l.whisker_r(g, &u), d),
                        )?;
                        if lhs != rhs {
                            rep.fail("biaction-mid-natural-x", format!("at {u}"));
                        }
                    }
                }
            }
        }
    }

    // unit coherences
    for x in &c.probe {
        for d in &vb.probe {
            // λ_{X◁Δ} ∘ m_{I,X,Δ} = λ_X ◁ Δ
            let lhs = c.compose(&l.lam(&r.act_obj(x, d)), &b.mid(&l.v.unit, x, d))?;
            let rhs = r.whisker_l(&l.lam(x), d);
            if lhs != rhs {
                rep.fail("biaction-unit-left", format!("at ({x},{d})"));
            }
        }
        for g in &vb.probe {
            // m_{Γ,X,I} ∘ ρ_{Γ▷X} = Γ ▷ ρ_X
            let gx = l.act_obj(g, x);
            let lhs = c.compose(&b.mid(g, x, &l.v.unit), &r.rho(&gx))?;
            let rhs = l.whisker_r(g, &r.rho(x));
            if lhs != rhs {
                rep.fail("biaction-unit-right", format!("at ({g},{x})"));
            }
        }
    }

    // compatibility with the left associator
    for g1 in &vb.probe {
        for g2 in &vb.probe {
            for x in &c.probe {
                for d in &vb.probe {
                    let xd = r.act_obj(x, d);
                    let lhs = c.compose(
                        &l.assoc(g1, g2, &xd),
                        &b.mid(&l.v.tensor_obj(g1, g2), x, d),
                    )?;
                    let rhs = c.compose_chain(&[
                        &l.whisker_r(g1, &b.mid(g2, x, d)),
                        &b.mid(g1, &l.act_obj(g2, x), d),
                        &r.whisker_l(&l.assoc(g1, g2, x), d),
                    ])?;
                    if lhs != rhs {
                        rep.fail("biaction-assoc-left", format!("at ({g1},{g2},{x},{d})"));
                    }
                }
            }
        }
    }
    // compatibility with the right associator
    for g in &vb.probe {
        for x in &c.probe {
            for d1 in &vb.probe {
                for d2 in &vb.probe {
                    let gx = l.act_obj(g, x);
                    let lhs = c.compose_chain(&[
                        &l.whisker_r(g, &r.assoc(x, d1, d2)),
                        &b.mid(g, &r.act_obj(x, d1), d2),
                        &r.whisker_l(&b.mid(g, x, d1), d2),
                    ])?;
                    let rhs = c.compose(
                        &b.mid(g, x, &l.v.tensor_obj(d1, d2)),
                        &r.assoc(&gx, d1, d2),
                    )?;
                    if lhs != rhs {
                        rep.fail("biaction-assoc-right", format!("at ({g},{x},{d1},{d2})"));
                    }
                }
            }
        }
    }

    Ok(rep)
}

// ---------------------------------------------------------------------------
// right strengths and bistrengths
// ---------------------------------------------------------------------------

type StrFn = Rc<dyn Fn(&Obj, &Obj) -> Result<Morphism>>;

/// A right strength for F : 𝒞 → 𝒟: a family str′_{X,Δ} : FX◁Δ → F(X◁Δ).
#[derive(Clone)]
pub struct RightStrength {
    pub functor: FunctorData,
    pub act_c: RightAction,
    pub act_d: RightAction,
    pub label: String,
    str_: StrFn,
}

impl RightStrength {
    pub fn new(
        functor: FunctorData,
        act_c: RightAction,
        act_d: RightAction,
        label: impl Into<String>,
        str_: impl Fn(&Obj, &Obj) -> Result<Morphism> + 'static,
    ) -> RightStrength {
        RightStrength {
            functor,
            act_c,
            act_d,
            label: label.into(),
            str_: Rc::new(str_),
        }
    }
    pub fn str(&self, x: &Obj, d: &Obj) -> Result<Morphism> {
        (self.str_)(x, d)
    }
}

impl std::fmt::Debug for RightStrength {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RightStrength({} on {})", self.label, self.functor.name)
    }
}

/// Check typing, naturality in X and Δ, and the unit/associativity
/// diagrams of a right strength over the probe window.
pub fn validate_right_strength(s: &RightStrength) -> Result<LawReport> {
    let mut rep = LawReport::default();
    let f = &s.functor;
    let (ac, ad) = (&s.act_c, &s.act_d);
    let vb = &ac.v.base;
    let (cc, cd) = (&ac.c, &ad.c);

    for x in &cc.probe {
        for d in &vb.probe {
            let m = s.str(x, d)?;
            if m.dom != ad.act_obj(&f.obj(x), d) || m.cod != f.obj(&ac.act_obj(x, d)) {
                rep.fail("rstrength-typing", format!("str′_{{{x},{d}}}"));
                continue;
            }
            // naturality in X
            for y in &cc.probe {
                for u in cc.hom(x, y)? {
                    let lhs = cd.compose(&s.str(y, d)?, &ad.whisker_l(&f.mor(&u), d))?;
                    let rhs = cd.compose(&f.mor(&ac.whisker_l(&u, d)), &m)?;
                    if lhs != rhs {
                        rep.fail("rstrength-natural-x", format!("at {u}, Δ={d}"));
                    }
                }
            }
            // naturality in Δ
            for d2 in &vb.probe {
                for sig in vb.hom(d, d2)? {
                    let lhs = cd.compose(&s.str(x, d2)?, &ad.whisker_r(&f.obj(x), &sig))?;
                    let rhs = cd.compose(&f.mor(&ac.whisker_r(x, &sig)), &m)?;
                    if lhs != rhs {
                        rep.fail("rstrength-natural-ctx", format!("at {sig}, X={x}"));
                    }
                }
            }
        }
    }

    // unit diagram: str′_{X,I} ∘ ρ_{FX} = F(ρ_X)
    for x in &cc.probe {
        let lhs = cd.compose(&s.str(x, &ac.v.unit)?, &ad.rho(&f.obj(x)))?;
        if lhs != f.mor(&ac.rho(x)) {
            rep.fail("rstrength-unit", format!("at X={x}"));
        }
    }

    // associativity diagram:
    // F(α_{X,Δ₁,Δ₂}) ∘ str′_{X◁Δ₁,Δ₂} ∘ (str′_{X,Δ₁}◁Δ₂)
    //   = str′_{X,Δ₁⊗Δ₂} ∘ α_{FX,Δ₁,Δ₂}
    for x in &cc.probe {
        for d1 in &vb.probe {
            for d2 in &vb.probe {
                let lhs = cd.compose_chain(&[
                    &f.mor(&ac.assoc(x, d1, d2)),
                    &s.str(&ac.act_obj(x, d1), d2)?,
                    &ad.whisker_l(&s.str(x, d1)?, d2),
                ])?;
                let rhs = cd.compose(
                    &s.str(x, &ac.v.tensor_obj(d1, d2))?,
                    &ad.assoc(&f.obj(x), d1, d2),
                )?;
                if lhs != rhs {
                    rep.fail("rstrength-assoc", format!("at ({x},{d1},{d2})"));
                }
            }
        }
    }

    Ok(rep)
}

/// A two-sided strength: a left strength and a right strength for the same
/// functor over biactions on its source and target.
#[derive(Clone)]
pub struct Bistrength {
    pub left: Strength,
    pub right: RightStrength,
    pub bi_c: Biaction,
    pub bi_d: Biaction,
}

/// Check both strengths and the interchange hexagon
/// F(m)∘str′_{Γ▷X,Δ}∘(str_{Γ,X}◁Δ) = str_{Γ,X◁Δ}∘(Γ▷str′_{X,Δ})∘m.
pub fn validate_bistrength(b: &Bistrength) -> Result<LawReport> {
    let mut rep = LawReport::default();
    rep.merge(crate::strength::validate_strength(&b.left)?);
    rep.merge(validate_right_strength(&b.right)?);

    let f = &b.left.functor;
    let lc = &b.bi_c.left;
    let rc = &b.bi_c.right;
    let ld = &b.bi_d.left;
    let rd = &b.bi_d.right;
    let vb = &lc.v.base;
    let cd = &ld.c;

    for g in &vb.probe {
        for x in &lc.c.probe {
            for d in &vb.probe {
                let gx = lc.act_obj(g, x);
                let lhs = cd.compose_chain(&[
                    &f.mor(&b.bi_c.mid(g, x, d)),
                    &b.right.str(&gx, d)?,
                    &rd.whisker_l(&b.left.str(g, x)?, d),
                ])?;
                let rhs = cd.compose_chain(&[
                    &b.left.str(g, &rc.act_obj(x, d))?,
                    &ld.whisker_r(g, &b.right.str(x, d)?),
                    &b.bi_d.mid(g, &f.obj(x), d),
                ])?;
                if lhs != rhs {
                    rep.fail("bistrength-hexagon", format!("at ({g},{x},{d})"));
                }
            }
        }
    }
    Ok(rep)
}

/// Derive a right strength from a left strength over self-biactions of
/// braided monoidal categories: str′_{X,Δ} = F(c_{Δ,X}) ∘ str_{Δ,X} ∘ c_{FX,Δ}.
pub fn bistrength_from_symmetry(
    s: &Strength,
    bi_c: &Biaction,
    bi_d: &Biaction,
) -> Result<RightStrength> {
    if !bi_c.left.v.has_braiding() || !bi_d.left.v.has_braiding() {
        return Err(LabError::NoBraiding);
    }
    let s1 = s.clone();
    let v_c = bi_c.left.v.clone();
    let v_d = bi_d.left.v.clone();
    let f = s.functor.clone();
    let cd = bi_d.left.c.clone();
    Ok(RightStrength::new(
        s.functor.clone(),
        bi_c.right.clone(),
        bi_d.right.clone(),
        format!("{}-braided", s.label),
        move |x: &Obj, d: &Obj| {
            cd.compose_chain(&[
                &f.mor(&v_c.braiding(d, x)?),
                &s1.str(d, x)?,
                &v_d.braiding(&f.obj(x), d)?,
            ])
        },
    ))
}

// ---------------------------------------------------------------------------
// commutativity and the induced lax monoidal structure
// ---------------------------------------------------------------------------

/// The left strength of a Kleisli strong monad: str_{Γ,X} = (η_{Γ▷X})*.
pub fn monad_left_strength(m: &KleisliStrongMonad, g: &Obj, x: &Obj) -> Result<Morphism> {
    let gx = m.act.act_obj(g, x);
    m.extend(g, x, &gx, &m.eta(&gx))
}

/// The braiding-derived right strength str′_{X,Δ} = T(c_{Δ,X})∘str_{Δ,X}∘c_{TX,Δ}
/// of a Kleisli strong monad over a braided self-action.
pub fn monad_right_strength(m: &KleisliStrongMonad, x: &Obj, d: &Obj) -> Result<Morphism> {
    let v = &m.act.v;
    let md = underlying_monad(m);
    m.act.c.compose_chain(&[
        &md.functor.mor(&v.braiding(d, x)?),
        &monad_left_strength(m, d, x)?,
        &v.braiding(&m.t_obj(x), d)?,
    ])
}

/// The two double-strength composites TX⊗TY → T(X⊗Y):
/// φ₁ = μ∘T(str)∘str′ (right first) and φ₂ = μ∘T(str′)∘str (left first).
pub fn double_strengths(
    m: &KleisliStrongMonad,
    x: &Obj,
    y: &Obj,
) -> Result<(Morphism, Morphism)> {
    let md = underlying_monad(m);
    let c = &m.act.c;
    let mu = md.mult.at(&m.act.v.tensor_obj(x, y));
    let phi1 = c.compose_chain(&[
        &mu,
        &md.functor.mor(&monad_left_strength(m, x, y)?),
        &monad_right_strength(m, x, &m.t_obj(y))?,
    ])?;
    let phi2 = c.compose_chain(&[
        &mu,
        &md.functor.mor(&monad_right_strength(m, x, y)?),
        &monad_left_strength(m, &m.t_obj(x), y)?,
    ])?;
    Ok((phi1, phi2))
}

/// Whether the monad is commutative on the window: the two double-strength
/// composites agree at every probe pair. Requires a braided base.
pub fn is_commutative_monad(m: &KleisliStrongMonad) -> Result<bool> {
    if !m.act.v.has_braiding() {
        return Err(LabError::NoBraiding);
    }
    for x in &m.act.c.probe {
        for y in &m.act.c.probe {
            let (phi1, phi2) = double_strengths(m, x, y)?;
            if phi1 != phi2 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The lax monoidal structure φ_{X,Y} : TX⊗TY → T(X⊗Y) of a commutative
/// monad, with unit η_I.
#[derive(Clone)]
pub struct LaxMonoidal {
    pub monad: KleisliStrongMonad,
    pub label: String,
}

impl LaxMonoidal {
    pub fn phi(&self, x: &Obj, y: &Obj) -> Result<Morphism> {
        Ok(double_strengths(&self.monad, x, y)?.0)
    }
    pub fn unit(&self) -> Morphism {
        self.monad.eta(&self.monad.act.v.unit)
    }
}

/// Build the lax monoidal structure of a strong monad; fails with
/// `LaxLawFailed` when the monad is not commutative on the window (the two
/// double strengths would give conflicting candidates).
pub fn lax_monoidal_from_commutative(m: &KleisliStrongMonad) -> Result<LaxMonoidal> {
    if !is_commutative_monad(m)? {
        return Err(LabError::LaxLawFailed(format!(
            "{} is not commutative: the double strengths disagree",
            m.label
        )));
    }
    Ok(LaxMonoidal {
        monad: m.clone(),
        label: format!("lax({})", m.label),
    })
}

/// Check naturality, the unit triangles, and the associativity hexagon of
/// a lax monoidal structure over the probe window.
pub fn validate_lax_monoidal(lx: &LaxMonoidal) -> Result<LawReport> {
    let mut rep = LawReport::default();
    let m = &lx.monad;
    let md = underlying_monad(m);
    let v = &m.act.v;
    let c = &m.act.c;
    let t = &md.functor;

    for x in &c.probe {
        for y in &c.probe {
            let phi = lx.phi(x, y)?;
            if phi.dom != v.tensor_obj(&m.t_obj(x), &m.t_obj(y))
                || phi.cod != m.t_obj(&v.tensor_obj(x, y))
            {
                rep.fail("lax-typing", format!("φ_{{{x},{y}}}"));
                continue;
            }
            // naturality
            for x2 in &c.probe {
                for f in c.hom(x, x2)? {
                    for y2 in &c.probe {
                        for g in c.hom(y, y2)? {
                            let lhs = c.compose(
                                &lx.phi(x2, y2)?,
                                &v.tensor_mor(&t.mor(&f), &t.mor(&g)),
                            )?;
                            let rhs = c.compose(&t.mor(&v.tensor_mor(&f, &g)), &phi)?;
                            if lhs != rhs {
                                rep.fail("lax-natural", format!("at ({f},{g})"));
                            }
                        }
                    }
                }
            }
        }
    }

    // unit triangles: T(λ_X)∘φ_{I,X}∘(η_I⊗TX) = λ_{TX}
    // and φ_{X,I}∘(TX⊗η_I)∘ρ_{TX} = T(ρ_X)
    let eta_i = m.eta(&v.unit);
    for x in &c.probe {
        let tx = m.t_obj(x);
        let lhs = c.compose_chain(&[
            &t.mor(&v.lam(x)),
            &lx.phi(&v.unit, x)?,
            &v.tensor_mor(&eta_i, &c.identity(&tx)),
        ])?;
        if lhs != v.lam(&tx) {
            rep.fail("lax-unit-left", format!("at X={x}"));
        }
        let lhs = c.compose_chain(&[
            &lx.phi(x, &v.unit)?,
            &v.tensor_mor(&c.identity(&tx), &eta_i),
            &v.rho(&tx),
        ])?;
        if lhs != t.mor(&v.rho(x)) {
            rep.fail("lax-unit-right", format!("at X={x}"));
        }
    }

    // associativity hexagon
    for x in &c.probe {
        for y in &c.probe {
            for z in &c.probe {
                let (tx, ty, tz) = (m.t_obj(x), m.t_obj(y), m.t_obj(z));
                let lhs = c.compose_chain(&[
                    &t.mor(&v.assoc(x, y, z)),
                    &lx.phi(&v.tensor_obj(x, y), z)?,
                    &v.tensor_mor(&lx.phi(x, y)?, &c.identity(&tz)),
                ])?;
                let rhs = c.compose_chain(&[
                    &lx.phi(x, &v.tensor_obj(y, z))?,
                    &v.tensor_mor(&c.identity(&tx), &lx.phi(y, z)?),
                    &v.assoc(&tx, &ty, &tz),
                ])?;
                if lhs != rhs {
                    rep.fail("lax-assoc", format!("at ({x},{y},{z})"));
                }
            }
        }
    }

    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::self_action;
    use crate::bounds::Bounds;
    use crate::corpus::{
        bool2, bool2_meet, exc_strength, exc_strong_monad, finset, finset_cartesian, finset_obj,
        finsetpt, finsetpt_smash, identity_strong_monad, terminal_strong_monad, writer_z2_monad,
        z2act, z2act_cartesian, WriterForm,
    };
    use crate::strength::identity_strength;

    fn finset_monoidal() -> MonoidalStructure {
        finset_cartesian(&finset(Bounds::default())).unwrap()
    }

    fn z2_monoidal() -> MonoidalStructure {
        z2act_cartesian(&z2act(Bounds::default())).unwrap()
    }

    #[test]
    fn right_self_actions_validate() {
        for m in [
            finset_monoidal(),
            bool2_meet(&bool2(Bounds::default())).unwrap(),
            z2_monoidal(),
        ] {
            let a = self_right_action(&m);
            let rep = validate_right_action(&a).unwrap();
            assert!(rep.pass(), "{}: {}", m.base.name, rep.summary());
        }
    }

    #[test]
    fn collapsed_rho_fails_validation() {
        let m = finset_monoidal();
        let good = self_right_action(&m);
        let g2 = good.clone();
        let bad = RightAction::new(
            m.clone(),
            m.base.clone(),
            m.tensor.clone(),
            move |x: &Obj| {
                let r = g2.rho(x);
                match r.cod.carrier().first() {
                    Some(e0) => Morphism::new(
                        r.dom.clone(),
                        r.cod.clone(),
                        r.dom
                            .carrier()
                            .iter()
                            .map(|e| (e.clone(), e0.clone()))
                            .collect::<Vec<_>>(),
                    ),
                    None => r,
                }
            },
            {
                let g3 = good.clone();
                move |x: &Obj, g1: &Obj, d: &Obj| g3.assoc(x, g1, d)
            },
        );
        let rep = validate_right_action(&bad).unwrap();
        assert!(!rep.pass());
        assert!(rep.failures.iter().any(|f| f.law.starts_with("raction-rho")
            || f.law.starts_with("raction-unit")));
    }

    #[test]
    fn self_biactions_validate() {
        let mut ms = vec![finset_monoidal(), z2_monoidal()];
        let mut cpt = finsetpt(Bounds::default());
        cpt.probe.truncate(2);
        ms.push(finsetpt_smash(&cpt).unwrap());
        for m in ms {
            let b = self_biaction(&m);
            let rep = validate_biaction(&b).unwrap();
            assert!(rep.pass(), "{}: {}", m.base.name, rep.summary());
        }
    }

    #[test]
    fn exc_and_writer_bistrengths_validate() {
        // exception functor on finset
        let m = finset_monoidal();
        let bi = self_biaction(&m);
        let act = self_action(&m);
        let left = exc_strength(&act, &finset_obj(2));
        let right = bistrength_from_symmetry(&left, &bi, &bi).unwrap();
        let b = Bistrength {
            left,
            right,
            bi_c: bi.clone(),
            bi_d: bi,
        };
        let rep = validate_bistrength(&b).unwrap();
        assert!(rep.pass(), "{}", rep.summary());

        // writer functor on z2act, both strength forms
        let mz = z2_monoidal();
        let bi = self_biaction(&mz);
        let act = self_action(&mz);
        for form in [WriterForm::Canonical, WriterForm::Twisted] {
            let km = writer_z2_monad(&act, form);
            let md = underlying_monad(&km);
            let km2 = km.clone();
            let left = Strength::new(
                md.functor.clone(),
                act.clone(),
                act.clone(),
                format!("writer-{form:?}"),
                move |g: &Obj, x: &Obj| monad_left_strength(&km2, g, x),
            );
            let right = bistrength_from_symmetry(&left, &bi, &bi).unwrap();
            let b = Bistrength {
                left,
                right,
                bi_c: bi.clone(),
                bi_d: bi.clone(),
            };
            let rep = validate_bistrength(&b).unwrap();
            assert!(rep.pass(), "{form:?}: {}", rep.summary());
        }
    }

    #[test]
    fn corrupted_right_strength_fails() {
        let m = finset_monoidal();
        let bi = self_biaction(&m);
        let act = self_action(&m);
        let left = identity_strength(&act);
        let good = bistrength_from_symmetry(&left, &bi, &bi).unwrap();
        let g2 = good.clone();
        // post-compose with the carrier-reversing bijection on F(X◁Δ)
        let bad = RightStrength::new(
            good.functor.clone(),
            good.act_c.clone(),
            good.act_d.clone(),
            "corrupted",
            move |x: &Obj, d: &Obj| {
                let s = g2.str(x, d)?;
                let cod = s.cod.clone();
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
                g2.act_d.c.compose(&twist, &s)
            },
        );
        let b = Bistrength {
            left,
            right: bad,
            bi_c: bi.clone(),
            bi_d: bi,
        };
        let rep = validate_bistrength(&b).unwrap();
        assert!(!rep.pass());
    }

    #[test]
    fn missing_braiding_is_reported() {
        let m = finset_monoidal();
        let m1 = m.clone();
        let m2 = m.clone();
        let m3 = m.clone();
        let stripped = MonoidalStructure::new(
            m.base.clone(),
            m.unit.clone(),
            m.tensor.clone(),
            move |x: &Obj| m1.lam(x),
            move |x: &Obj| m2.rho(x),
            move |a: &Obj, b: &Obj, c: &Obj| m3.assoc(a, b, c),
            None,
        );
        let bi = self_biaction(&stripped);
        let left = identity_strength(&self_action(&stripped));
        assert!(matches!(
            bistrength_from_symmetry(&left, &bi, &bi),
            Err(LabError::NoBraiding)
        ));
        let km = identity_strong_monad(&self_action(&stripped));
        assert!(matches!(
            is_commutative_monad(&km),
            Err(LabError::NoBraiding)
        ));
    }

    #[test]
    fn commutativity_verdicts() {
        let m = finset_monoidal();
        let act = self_action(&m);
        assert!(is_commutative_monad(&identity_strong_monad(&act)).unwrap());
        assert!(is_commutative_monad(&terminal_strong_monad(&act, &finset_obj(1))).unwrap());
        // one exception commutes (the two failure values cannot disagree)
        assert!(is_commutative_monad(&exc_strong_monad(&act, &finset_obj(1))).unwrap());
        // two exceptions do not: the double strengths pick different errors
        assert!(!is_commutative_monad(&exc_strong_monad(&act, &finset_obj(2))).unwrap());
        // the abelian writer monad commutes in both strength forms
        let mz = z2_monoidal();
        let actz = self_action(&mz);
        for form in [WriterForm::Canonical, WriterForm::Twisted] {
            assert!(is_commutative_monad(&writer_z2_monad(&actz, form)).unwrap());
        }
    }

    #[test]
    fn lax_monoidal_structures() {
        let m = finset_monoidal();
        let act = self_action(&m);
        let lx = lax_monoidal_from_commutative(&exc_strong_monad(&act, &finset_obj(1))).unwrap();
        let rep = validate_lax_monoidal(&lx).unwrap();
        assert!(rep.pass(), "{}", rep.summary());

        let mz = z2_monoidal();
        let actz = self_action(&mz);
        let lx =
            lax_monoidal_from_commutative(&writer_z2_monad(&actz, WriterForm::Canonical)).unwrap();
        let rep = validate_lax_monoidal(&lx).unwrap();
        assert!(rep.pass(), "{}", rep.summary());

        // non-commutative monads are rejected
        assert!(matches!(
            lax_monoidal_from_commutative(&exc_strong_monad(&act, &finset_obj(2))),
            Err(LabError::LaxLawFailed(_))
        ));
    }
}
