//! Strong monads in Kleisli (extension-operator) form, the equivalence with
//! strength-based and lifting-based presentations, strong monad morphisms,
//! strongly free algebras, and the uniqueness of strong structure over a
//! well-pointed action.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use crate::action::{is_well_pointed, LeftAction};
use crate::core::{
    preserves_decorations, product_category, unpair_mor, validate_natural, CatOps,
    Category, FunctorData, LawReport, Morphism, NaturalData, Obj,
};
use crate::error::{LabError, Result};
use crate::strength::{check_strong_naturality, strength_to_ctxform, CtxFunctorData, Strength};

// ---------------------------------------------------------------------------
// plain monads
// ---------------------------------------------------------------------------

/// A monad presented as endofunctor + unit + multiplication.
#[derive(Clone, Debug)]
pub struct MonadData {
    pub functor: FunctorData,
    /// η : Id ⇒ T
    pub unit: NaturalData,
    /// μ : T∘T ⇒ T
    pub mult: NaturalData,
}

/// Naturality of η and μ plus the unit and associativity squares on probes.
pub fn validate_monad(md: &MonadData) -> Result<LawReport> {
    let mut rep = LawReport::default();
    rep.merge(validate_natural(&md.unit)?);
    rep.merge(validate_natural(&md.mult)?);
    let c = &md.functor.source;
    for x in &c.probe {
        let tx = md.functor.obj(x);
        let mu = md.mult.at(x);
        let idt = c.identity(&tx);
        let left = c.compose(&mu, &md.unit.at(&tx))?;
        if left != idt {
            rep.fail("monad-unit-left", format!("μ∘η_T ≠ id at {}", x.id()));
        }
        let right = c.compose(&mu, &md.functor.mor(&md.unit.at(x)))?;
        if right != idt {
            rep.fail("monad-unit-right", format!("μ∘Tη ≠ id at {}", x.id()));
        }
        let lhs = c.compose(&mu, &md.mult.at(&tx))?;
        let rhs = c.compose(&mu, &md.functor.mor(&mu))?;
        if lhs != rhs {
            rep.fail("monad-assoc", format!("μ∘μ_T ≠ μ∘Tμ at {}", x.id()));
        }
    }
    Ok(rep)
}

// ---------------------------------------------------------------------------
// strong monads in Kleisli form
// ---------------------------------------------------------------------------

type ObjFn = Rc<dyn Fn(&Obj) -> Obj>;
type UnitFn = Rc<dyn Fn(&Obj) -> Morphism>;
type ExtFn = Rc<dyn Fn(&Obj, &Obj, &Obj, &Morphism) -> Result<Morphism>>;

/// A strong monad over a left action, presented by its object map, unit
/// η_X : X → TX, and context-indexed extension taking f : Γ▷X → TY to
/// f* : Γ▷TX → TY.
#[derive(Clone)]
pub struct KleisliStrongMonad {
    pub act: LeftAction,
    pub label: String,
    on_obj: ObjFn,
    unit: UnitFn,
    ext: ExtFn,
}

impl std::fmt::Debug for KleisliStrongMonad {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "KleisliStrongMonad({})", self.label)
    }
}

impl KleisliStrongMonad {
    pub fn new(
        act: LeftAction,
        label: impl Into<String>,
        on_obj: impl Fn(&Obj) -> Obj + 'static,
        unit: impl Fn(&Obj) -> Morphism + 'static,
        ext: impl Fn(&Obj, &Obj, &Obj, &Morphism) -> Result<Morphism> + 'static,
    ) -> KleisliStrongMonad {
        KleisliStrongMonad {
            act,
            label: label.into(),
            on_obj: Rc::new(on_obj),
            unit: Rc::new(unit),
            ext: Rc::new(ext),
        }
    }
    pub fn t_obj(&self, x: &Obj) -> Obj {
        (self.on_obj)(x)
    }
    pub fn eta(&self, x: &Obj) -> Morphism {
        (self.unit)(x)
    }
    /// The extension of `f : Γ▷X → TY` to `f* : Γ▷TX → TY`. The index
    /// objects are passed explicitly because the acted object does not
    /// remember its factors.
    pub fn extend(&self, g: &Obj, x: &Obj, y: &Obj, f: &Morphism) -> Result<Morphism> {
        (self.ext)(g, x, y, f)
    }
}

/// Membership test usable in both concrete and table-presented categories.
pub(crate) fn mor_in_category(c: &Category, m: &Morphism) -> bool {
    if c.is_concrete() {
        m.table.len() == m.dom.carrier().len()
            && m.dom.carrier().iter().all(|e| m.table.contains_key(e))
            && m.table.values().all(|v| m.cod.carrier().contains(v))
            && preserves_decorations(m)
    } else {
        match c.hom(&m.dom, &m.cod) {
            Ok(hs) => hs.iter().any(|h| h == m),
            Err(_) => false,
        }
    }
}

/// Check the extension-form laws of a strong monad on the probe window:
/// typing of η and f*, the λ-unit law, the Kleisli unit law, naturality of
/// extension in the context, and the Kleisli associativity law.
pub fn validate_strong_monad(m: &KleisliStrongMonad) -> Result<LawReport> {
    let mut rep = LawReport::default();
    let a = &m.act;
    let c = &a.c;
    let vb = &a.v.base;

    for x in &c.probe {
        let tx = m.t_obj(x);
        let eta = m.eta(x);
        if eta.dom != *x || eta.cod != tx || !mor_in_category(c, &eta) {
            rep.fail("unit-typing", format!("η_{} not a morphism X → TX", x.id()));
            continue;
        }
        // (η_X ∘ λ_X)* = λ_{TX}
        let lam = a.lam(x);
        let f0 = c.compose(&eta, &lam)?;
        let ef0 = m.extend(&a.v.unit, x, x, &f0)?;
        if ef0 != a.lam(&tx) {
            rep.fail(
                "kleisli-unit-lambda",
                format!("(η∘λ)* ≠ λ_T at {}", x.id()),
            );
        }
    }

    for g in &vb.probe {
        for x in &c.probe {
            let gx = a.act_obj(g, x);
            let tx = m.t_obj(x);
            let gtx = a.act_obj(g, &tx);
            for y in &c.probe {
                let ty = m.t_obj(y);
                let fs = c.hom(&gx, &ty)?;
                for f in &fs {
                    let ef = m.extend(g, x, y, f)?;
                    if ef.dom != gtx || ef.cod != ty {
                        rep.fail(
                            "extend-typing",
                            format!("f* badly typed at Γ={}, X={}, Y={}", g.id(), x.id(), y.id()),
                        );
                        continue;
                    }
                    if !mor_in_category(c, &ef) {
                        rep.fail(
                            "extend-membership",
                            format!(
                                "f* not a morphism at Γ={}, X={}, Y={}",
                                g.id(),
                                x.id(),
                                y.id()
                            ),
                        );
                        continue;
                    }
                    // f* ∘ (Γ▷η_X) = f
                    let back = c.compose(&ef, &a.whisker_r(g, &m.eta(x)))?;
                    if back != *f {
                        rep.fail(
                            "kleisli-unit-eta",
                            format!(
                                "f*∘(Γ▷η) ≠ f at Γ={}, X={}, Y={}",
                                g.id(),
                                x.id(),
                                y.id()
                            ),
                        );
                    }
                    // naturality of extension in the context
                    for d in &vb.probe {
                        for sigma in vb.hom(d, g)? {
                            let fs2 = c.compose(f, &a.whisker_l(&sigma, x))?;
                            let lhs = m.extend(d, x, y, &fs2)?;
                            let rhs = c.compose(&ef, &a.whisker_l(&sigma, &tx))?;
                            if lhs != rhs {
                                rep.fail(
                                    "extend-natural-ctx",
                                    format!(
                                        "extension not natural at σ:{}→{}, X={}, Y={}",
                                        d.id(),
                                        g.id(),
                                        x.id(),
                                        y.id()
                                    ),
                                );
                            }
                        }
                    }
                }

                // Kleisli associativity: g* ∘ (Γ′▷f*) ∘ α = (g* ∘ (Γ′▷f) ∘ α)*
                for g1 in &vb.probe {
                    let mut hoisted = Vec::new();
                    for f in &fs {
                        let ef = m.extend(g, x, y, f)?;
                        hoisted.push((
                            f,
                            a.whisker_r(g1, &ef),
                            a.whisker_r(g1, f),
                            a.assoc(g1, g, &tx),
                            a.assoc(g1, g, x),
                        ));
                    }
                    let gg = a.v.tensor_obj(g1, g);
                    for z in &c.probe {
                        let tz = m.t_obj(z);
                        let g1y = a.act_obj(g1, y);
                        for gm in c.hom(&g1y, &tz)? {
                            let eg = m.extend(g1, y, z, &gm)?;
                            for (f, wef, wf, atx, ax) in &hoisted {
                                let lhs = c.compose_chain(&[&eg, wef, atx])?;
                                let inner = c.compose_chain(&[&eg, wf, ax])?;
                                let rhs = m.extend(&gg, x, z, &inner)?;
                                if lhs != rhs {
                                    rep.fail(
                                        "kleisli-assoc",
                                        format!(
                                            "associativity fails at Γ′={}, Γ={}, X={}, Y={}, Z={}, f={:?}",
                                            g1.id(),
                                            g.id(),
                                            x.id(),
                                            y.id(),
                                            z.id(),
                                            f.table
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

/// Recover the plain monad (endofunctor, unit, multiplication) from the
/// Kleisli presentation: T₀f = (η∘f∘λ)* ∘ λ⁻¹ and μ = (λ_T)* ∘ λ⁻¹.
pub fn underlying_monad(m: &KleisliStrongMonad) -> MonadData {
    let a = m.act.clone();
    let c = a.c.clone();
    let m1 = m.clone();
    let a1 = a.clone();
    let c1 = c.clone();
    let functor = FunctorData::new(
        format!("{}₀", m.label),
        c.clone(),
        c.clone(),
        {
            let m0 = m.clone();
            move |x: &Obj| m0.t_obj(x)
        },
        move |f: &Morphism| {
            let unit = a1.v.unit.clone();
            let f0 = c1
                .compose_chain(&[&m1.eta(&f.cod), f, &a1.lam(&f.dom)])
                .expect("composable");
            let ef = m1
                .extend(&unit, &f.dom, &f.cod, &f0)
                .expect("extension defined");
            let tx = m1.t_obj(&f.dom);
            c1.compose(&ef, &a1.lam_inv(&tx).expect("λ invertible"))
                .expect("composable")
        },
    );
    let unit = NaturalData::new("eta", FunctorData::identity(&c), functor.clone(), {
        let m0 = m.clone();
        move |x: &Obj| m0.eta(x)
    });
    let mult = NaturalData::new("mu", functor.after(&functor), functor.clone(), {
        let m0 = m.clone();
        let a0 = a.clone();
        let c0 = c.clone();
        move |x: &Obj| {
            let tx = m0.t_obj(x);
            let ttx = m0.t_obj(&tx);
            let ef = m0
                .extend(&a0.v.unit, &tx, x, &a0.lam(&tx))
                .expect("extension defined");
            c0.compose(&ef, &a0.lam_inv(&ttx).expect("λ invertible"))
                .expect("composable")
        }
    });
    MonadData {
        functor,
        unit,
        mult,
    }
}

// ---------------------------------------------------------------------------
// strength-based presentation
// ---------------------------------------------------------------------------

/// Result of assembling a strong monad from a monad plus a strength: either
/// the monad, or the report of which unit/multiplication diagram failed.
#[derive(Debug)]
pub enum StrengthToMonad {
    Monad(KleisliStrongMonad),
    Fail(LawReport),
}

/// Combine a monad with a strength for its functor. Requires the unit
/// triangle str∘(Γ▷η) = η and the multiplication rectangle
/// μ∘T(str)∘str = str∘(Γ▷μ) on the window; on failure the violated
/// diagrams are reported instead.
pub fn strength_to_monad(md: &MonadData, s: &Strength) -> Result<StrengthToMonad> {
    let a = &s.act_c;
    let c = &a.c;
    let mut rep = LawReport::default();
    for g in &a.v.base.probe {
        for x in &c.probe {
            let tx = md.functor.obj(x);
            let gx = a.act_obj(g, x);
            let str_gx = match s.str(g, x) {
                Ok(m) => m,
                Err(e) => {
                    rep.fail("strength-component", format!("{e:?}"));
                    continue;
                }
            };
            // unit triangle
            let lhs = c.compose(&str_gx, &a.whisker_r(g, &md.unit.at(x)))?;
            if lhs != md.unit.at(&gx) {
                rep.fail(
                    "eta-triangle",
                    format!("str∘(Γ▷η) ≠ η at Γ={}, X={}", g.id(), x.id()),
                );
            }
            // multiplication rectangle
            match s.str(g, &tx) {
                Ok(str_gtx) => {
                    let lhs = c.compose_chain(&[
                        &md.mult.at(&gx),
                        &md.functor.mor(&str_gx),
                        &str_gtx,
                    ])?;
                    let rhs = c.compose(&str_gx, &a.whisker_r(g, &md.mult.at(x)))?;
                    if lhs != rhs {
                        rep.fail(
                            "mu-rectangle",
                            format!("μ∘T(str)∘str ≠ str∘(Γ▷μ) at Γ={}, X={}", g.id(), x.id()),
                        );
                    }
                }
                Err(e) => rep.fail("strength-component", format!("{e:?}")),
            }
        }
    }
    if !rep.pass() {
        return Ok(StrengthToMonad::Fail(rep));
    }
    let cf = strength_to_ctxform(s);
    let md1 = md.clone();
    let c1 = c.clone();
    let label = format!("{}⋉{}", md.functor.name, s.label);
    let monad = KleisliStrongMonad::new(
        a.clone(),
        label,
        {
            let f0 = md.functor.clone();
            move |x: &Obj| f0.obj(x)
        },
        {
            let unit = md.unit.clone();
            move |x: &Obj| unit.at(x)
        },
        move |g: &Obj, x: &Obj, y: &Obj, f: &Morphism| {
            // f* = μ_Y ∘ T⟨Γ⟩f
            let tf = cf.ctx(g, x, f)?;
            c1.compose(&md1.mult.at(y), &tf)
        },
    );
    Ok(StrengthToMonad::Monad(monad))
}

/// Extract the canonical strength str_{Γ,X} = (η_{Γ▷X})* from a strong
/// monad in Kleisli form.
pub fn monad_to_strength(m: &KleisliStrongMonad) -> Strength {
    let a = m.act.clone();
    let m1 = m.clone();
    let functor = underlying_monad(m).functor;
    Strength::new(
        functor,
        a.clone(),
        a.clone(),
        format!("{}-canonical", m.label),
        move |g, x| {
            let gx = a.act_obj(g, x);
            m1.extend(g, x, &gx, &m1.eta(&gx))
        },
    )
}

// ---------------------------------------------------------------------------
// Kleisli category and lifting-based presentation
// ---------------------------------------------------------------------------

/// The Kleisli category of a monad: same objects, hom(X,Y) = hom(X,TY),
/// identity η, composition g∘f = μ ∘ Tg ∘ f.
pub fn kleisli_category(md: &MonadData) -> Category {
    let base = md.functor.source.clone();
    let probe = base.probe.clone();
    let objects = base.objects().map(|os| os.to_vec());
    let md_h = md.clone();
    let base_h = base.clone();
    let md_i = md.clone();
    let md_c = md.clone();
    let base_c = base.clone();
    // Deriving T-objects, identities, and extensions μ_Z ∘ Tg walks the
    // presentation's closure chain each time; memoize them so composition
    // sweeps stay table-speed.
    let tobj_cache: Rc<RefCell<BTreeMap<Obj, Obj>>> = Rc::new(RefCell::new(BTreeMap::new()));
    let tobj_h = tobj_cache.clone();
    let tobj_c = tobj_cache.clone();
    let tobj = |md: &MonadData, cache: &RefCell<BTreeMap<Obj, Obj>>, y: &Obj| -> Obj {
        if let Some(t) = cache.borrow().get(y) {
            return t.clone();
        }
        let t = md.functor.obj(y);
        cache.borrow_mut().insert(y.clone(), t.clone());
        t
    };
    let id_cache: Rc<RefCell<BTreeMap<Obj, Morphism>>> = Rc::new(RefCell::new(BTreeMap::new()));
    let ext_cache: Rc<RefCell<BTreeMap<Morphism, Morphism>>> =
        Rc::new(RefCell::new(BTreeMap::new()));
    Category::from_ops(
        format!("Kl({})", base.name),
        probe,
        CatOps {
            hom: Box::new(move |x: &Obj, y: &Obj| {
                let ty = tobj(&md_h, &tobj_h, y);
                let hs = base_h.hom(x, &ty)?;
                Ok(hs
                    .into_iter()
                    .map(|h| h.retag(x.clone(), y.clone()))
                    .collect())
            }),
            identity: Box::new(move |x: &Obj| {
                if let Some(i) = id_cache.borrow().get(x) {
                    return i.clone();
                }
                let i = md_i.unit.at(x).retag(x.clone(), x.clone());
                id_cache.borrow_mut().insert(x.clone(), i.clone());
                i
            }),
            compose: Box::new(move |g: &Morphism, f: &Morphism| {
                let ty = tobj(&md_c, &tobj_c, &f.cod);
                let tz = tobj(&md_c, &tobj_c, &g.cod);
                // Guard table shape before running the functor, so inverse
                // searches over ill-typed candidates fail cleanly.
                let ok = |m: &Morphism, t: &Obj| {
                    m.table.len() == m.dom.carrier().len()
                        && m.dom.carrier().iter().all(|e| m.table.contains_key(e))
                        && m.table.values().all(|v| t.carrier().contains(v))
                };
                if !ok(f, &ty) || !ok(g, &tz) {
                    return Err(LabError::Other(
                        "not a Kleisli morphism: table does not land in T(cod)".into(),
                    ));
                }
                let ext = {
                    let hit = ext_cache.borrow().get(g).cloned();
                    match hit {
                        Some(e) => e,
                        None => {
                            let g0 = g.retag(g.dom.clone(), tz.clone());
                            let e = base_c
                                .compose(&md_c.mult.at(&g.cod), &md_c.functor.mor(&g0))?;
                            ext_cache.borrow_mut().insert(g.clone(), e.clone());
                            e
                        }
                    }
                };
                let f0 = f.retag(f.dom.clone(), ty.clone());
                let comp = base_c.compose(&ext, &f0)?;
                Ok(comp.retag(f.dom.clone(), g.cod.clone()))
            }),
            objects,
        },
    )
}

/// The identity-on-objects inclusion K_T : 𝒞 → Kl(T), f ↦ η∘f.
pub fn kleisli_inclusion(md: &MonadData, kl: &Category) -> FunctorData {
    let base = md.functor.source.clone();
    let md1 = md.clone();
    let base1 = base.clone();
    FunctorData::new(
        "K",
        base.clone(),
        kl.clone(),
        |x: &Obj| x.clone(),
        move |f: &Morphism| {
            let comp = base1
                .compose(&md1.unit.at(&f.cod), f)
                .expect("composable");
            comp.retag(f.dom.clone(), f.cod.clone())
        },
    )
}

/// A lifting of the action along K_T: the action on Kl(T) induced by a
/// strong monad, Γ▷_T f = str ∘ (Γ▷f).
#[derive(Clone)]
pub struct KleisliLifting {
    pub monad: KleisliStrongMonad,
    pub data: MonadData,
    pub kl: Category,
    pub lifted: LeftAction,
}

pub fn kleisli_lifting(m: &KleisliStrongMonad) -> KleisliLifting {
    let md = underlying_monad(m);
    let kl = kleisli_category(&md);
    let a = m.act.clone();
    let s = monad_to_strength(m);
    let md1 = md.clone();
    let a_obj = a.clone();
    let a_mor = a.clone();
    let s1 = s.clone();
    let act = FunctorData::new(
        format!("▷_{}", m.label),
        product_category(&a.v.base, &kl),
        kl.clone(),
        move |p: &Obj| {
            let (g, x) = p.parts().expect("pair object");
            a_obj.act_obj(g, x)
        },
        move |pm: &Morphism| {
            let (sigma, f) = unpair_mor(pm).expect("pair morphism");
            let tfcod = md1.functor.obj(&f.cod);
            let f0 = f.retag(f.dom.clone(), tfcod);
            let w = a_mor.act_mor(&sigma, &f0);
            let str_dy = s1.str(&sigma.cod, &f.cod).expect("strength component");
            let comp = a_mor.c.compose(&str_dy, &w).expect("composable");
            comp.retag(
                a_mor.act_obj(&sigma.dom, &f.dom),
                a_mor.act_obj(&sigma.cod, &f.cod),
            )
        },
    );
    let a_lam = a.clone();
    let md_lam = md.clone();
    let a_asc = a.clone();
    let md_asc = md.clone();
    let lifted = LeftAction::new(
        a.v.clone(),
        kl.clone(),
        act,
        move |x: &Obj| {
            let lam = a_lam.lam(x);
            let comp = a_lam
                .c
                .compose(&md_lam.unit.at(x), &lam)
                .expect("composable");
            comp.retag(lam.dom.clone(), x.clone())
        },
        move |g1: &Obj, g2: &Obj, x: &Obj| {
            let al = a_asc.assoc(g1, g2, x);
            let comp = a_asc
                .c
                .compose(&md_asc.unit.at(&al.cod), &al)
                .expect("composable");
            comp.retag(al.dom.clone(), al.cod.clone())
        },
    );
    KleisliLifting {
        monad: m.clone(),
        data: md,
        kl,
        lifted,
    }
}

/// Does the lifted action commute with the inclusion K_T on the window?
pub fn lifting_square_commutes(l: &KleisliLifting) -> Result<bool> {
    let a = &l.monad.act;
    let base = &a.c;
    let k = kleisli_inclusion(&l.data, &l.kl);
    for g in &a.v.base.probe {
        for x in &base.probe {
            for y in &base.probe {
                for u in base.hom(x, y)? {
                    let lhs = k.mor(&a.whisker_r(g, &u));
                    let rhs = l.lifted.whisker_r(g, &k.mor(&u));
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
            }
            for h in &a.v.base.probe {
                for sigma in a.v.base.hom(g, h)? {
                    let lhs = k.mor(&a.whisker_l(&sigma, x));
                    let rhs = l.lifted.whisker_l(&sigma, x);
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Recover the strength from a lifting: str_{Γ,X} is the lifted whiskering
/// of the Kleisli morphism TX → X carried by the identity table.
pub fn lifting_to_strength(l: &KleisliLifting) -> Result<Strength> {
    if !lifting_square_commutes(l)? {
        return Err(LabError::LiftingSquareBroken(
            "lifted action does not commute with the Kleisli inclusion".into(),
        ));
    }
    let lifted = l.lifted.clone();
    let a = l.monad.act.clone();
    let m = l.monad.clone();
    let functor = l.data.functor.clone();
    Ok(Strength::new(
        functor,
        a.clone(),
        a.clone(),
        format!("{}-from-lifting", l.monad.label),
        move |g, x| {
            let tx = m.t_obj(x);
            let id_kl = Morphism::new(
                tx.clone(),
                x.clone(),
                tx.carrier().iter().map(|e| (e.clone(), e.clone())),
            );
            let w = lifted.whisker_r(g, &id_kl);
            Ok(w.retag(a.act_obj(g, &tx), m.t_obj(&a.act_obj(g, x))))
        },
    ))
}

// ---------------------------------------------------------------------------
// strong monad morphisms
// ---------------------------------------------------------------------------

/// Check that τ : S ⇒ T is a strong monad morphism, cross-asserting the four
/// equivalent formulations on the window: the Kleisli conditions, strong
/// naturality, the strength square, and compatibility of the induced Kleisli
/// functor with the liftings. Errors if the formulations disagree.
pub fn validate_strong_monad_morphism(
    tau: &NaturalData,
    s: &KleisliStrongMonad,
    d: &KleisliStrongMonad,
) -> Result<bool> {
    let a = &s.act;
    let c = &a.c;
    let vb = &a.v.base;

    // (1) Kleisli form: τ∘η = η and τ_Y∘f* = (τ_Y∘f)*∘(Γ▷τ_X).
    let mut c1 = true;
    'k: for x in &c.probe {
        if c.compose(&tau.at(x), &s.eta(x))? != d.eta(x) {
            c1 = false;
            break;
        }
        for g in &vb.probe {
            let gx = a.act_obj(g, x);
            for y in &c.probe {
                let sy = s.t_obj(y);
                for f in c.hom(&gx, &sy)? {
                    let lhs = c.compose(&tau.at(y), &s.extend(g, x, y, &f)?)?;
                    let tf = c.compose(&tau.at(y), &f)?;
                    let rhs =
                        c.compose(&d.extend(g, x, y, &tf)?, &a.whisker_r(g, &tau.at(x)))?;
                    if lhs != rhs {
                        c1 = false;
                        break 'k;
                    }
                }
            }
        }
    }

    // (2) strong naturality for the canonical strengths.
    let ss = monad_to_strength(s);
    let sd = monad_to_strength(d);
    let c2 = check_strong_naturality(tau, &ss, &sd)?;

    // (3) the strength square τ_{Γ▷X}∘str^S = str^T∘(Γ▷τ_X).
    let mut c3 = true;
    'q: for g in &vb.probe {
        for x in &c.probe {
            let gx = a.act_obj(g, x);
            let lhs = c.compose(&tau.at(&gx), &ss.str(g, x)?)?;
            let rhs = c.compose(&sd.str(g, x)?, &a.whisker_r(g, &tau.at(x)))?;
            if lhs != rhs {
                c3 = false;
                break 'q;
            }
        }
    }

    // (4) the induced functor Kl(τ) commutes with the liftings.
    let ls = kleisli_lifting(s);
    let ld = kleisli_lifting(d);
    let kl_tau = |f: &Morphism| -> Result<Morphism> {
        let sy = s.t_obj(&f.cod);
        let f0 = f.retag(f.dom.clone(), sy);
        let comp = c.compose(&tau.at(&f.cod), &f0)?;
        Ok(comp.retag(f.dom.clone(), f.cod.clone()))
    };
    let mut c4 = true;
    'l: for g in &vb.probe {
        for x in &c.probe {
            for y in &c.probe {
                for f in ls.kl.hom(x, y)? {
                    let lhs = kl_tau(&ls.lifted.whisker_r(g, &f))?;
                    let rhs = ld.lifted.whisker_r(g, &kl_tau(&f)?);
                    if lhs != rhs {
                        c4 = false;
                        break 'l;
                    }
                }
            }
        }
    }

    if c1 != c2 || c1 != c3 || c1 != c4 {
        return Err(LabError::Other(format!(
            "equivalent monad-morphism criteria disagree on the window: \
             kleisli={c1}, strong-natural={c2}, square={c3}, lifting={c4}"
        )));
    }
    Ok(c1)
}

// ---------------------------------------------------------------------------
// strongly free algebras
// ---------------------------------------------------------------------------

/// An algebra (A, a : F₀A → A) for an endofunctor.
#[derive(Clone, Debug)]
pub struct FAlgebra {
    pub carrier: Obj,
    pub structure: Morphism,
}

/// Candidate strongly free algebra on `base`: an algebra with an injection
/// base → carrier.
#[derive(Clone, Debug)]
pub struct StronglyFreeCandidate {
    pub base: Obj,
    pub algebra: FAlgebra,
    pub inject: Morphism,
}

/// Decide (on the window) whether the candidate is strongly free: for every
/// context Γ, algebra (B,b) on a probe carrier, and g : Γ▷X → B, there is a
/// unique algebra map h : Γ▷A → B in context with h∘(Γ▷inject) = g.
pub fn is_strongly_free(f: &CtxFunctorData, cand: &StronglyFreeCandidate) -> Result<bool> {
    let a = &f.act_c;
    let c = &a.c;
    let f0 = f.underlying();
    let aobj = &cand.algebra.carrier;
    let astr = &cand.algebra.structure;
    if cand.inject.dom != cand.base
        || cand.inject.cod != *aobj
        || astr.dom != f0.obj(aobj)
        || astr.cod != *aobj
    {
        return Ok(false);
    }
    for g in &a.v.base.probe {
        let ga = a.act_obj(g, aobj);
        let w_inj = a.whisker_r(g, &cand.inject);
        let w_act = a.whisker_r(g, astr);
        for b in &c.probe {
            let hs = c.hom(&ga, b)?;
            let mut pre = Vec::with_capacity(hs.len());
            for h in &hs {
                pre.push((
                    c.compose(h, &w_inj)?,
                    c.compose(h, &w_act)?,
                    f.ctx(g, aobj, h)?,
                ));
            }
            for bstr in c.hom(&f0.obj(b), b)? {
                let mut counts: HashMap<&Morphism, usize> = HashMap::new();
                for (h_inj, h_act, fh) in &pre {
                    if *h_act == c.compose(&bstr, fh)? {
                        *counts.entry(h_inj).or_insert(0) += 1;
                    }
                }
                let gx = a.act_obj(g, &cand.base);
                for gm in c.hom(&gx, b)? {
                    if counts.get(&gm).copied().unwrap_or(0) != 1 {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Assemble the strongly free monad from a family of strongly free algebras:
/// unit = inject, extension computed by searching hom(Γ▷TX, TY) for the
/// unique mediator compatible with the injection and the algebra structure.
pub fn monad_from_strongly_free(
    f: &CtxFunctorData,
    assign: impl Fn(&Obj) -> StronglyFreeCandidate + 'static,
) -> KleisliStrongMonad {
    let a = f.act_c.clone();
    let assign = Rc::new(assign);
    let as_obj = assign.clone();
    let as_unit = assign.clone();
    let f1 = f.clone();
    let a1 = a.clone();
    let cache: RefCell<BTreeMap<String, Morphism>> = RefCell::new(BTreeMap::new());
    KleisliStrongMonad::new(
        a.clone(),
        format!("free({})", f.name),
        move |x: &Obj| as_obj(x).algebra.carrier.clone(),
        move |x: &Obj| as_unit(x).inject.clone(),
        move |g: &Obj, x: &Obj, y: &Obj, fm: &Morphism| {
            let key = format!("{}|{}|{}|{:?}", g.id(), x.id(), y.id(), fm.table);
            if let Some(m) = cache.borrow().get(&key) {
                return Ok(m.clone());
            }
            let cx = assign(x);
            let cy = assign(y);
            let c = &a1.c;
            let tx = &cx.algebra.carrier;
            let ty = &cy.algebra.carrier;
            let gtx = a1.act_obj(g, tx);
            let w_inj = a1.whisker_r(g, &cx.inject);
            let w_act = a1.whisker_r(g, &cx.algebra.structure);
            let mut found: Option<Morphism> = None;
            for h in c.hom(&gtx, ty)? {
                if c.compose(&h, &w_inj)? != *fm {
                    continue;
                }
                let fh = f1.ctx(g, tx, &h)?;
                if c.compose(&h, &w_act)? != c.compose(&cy.algebra.structure, &fh)? {
                    continue;
                }
                if found.is_some() {
                    return Err(LabError::NoMediator(format!(
                        "mediator not unique for Γ={}, X={}, Y={}",
                        g.id(),
                        x.id(),
                        y.id()
                    )));
                }
                found = Some(h);
            }
            match found {
                Some(h) => {
                    cache.borrow_mut().insert(key, h.clone());
                    Ok(h)
                }
                None => Err(LabError::NoMediator(format!(
                    "no mediator for Γ={}, X={}, Y={}",
                    g.id(),
                    x.id(),
                    y.id()
                ))),
            }
        },
    )
}

/// A category of algebras over a concrete base, kept alongside a mutable
/// registry so that constructions (liftings, powerings) can introduce
/// algebra objects beyond the initial probe enumeration. Algebra objects
/// share the carrier of their base object and record the structure map in
/// their id and payload.
#[derive(Clone)]
pub struct AlgebraCategory {
    pub cat: Category,
    pub forget: FunctorData,
    reg: Rc<RefCell<Vec<(Obj, Obj, Morphism)>>>,
    admit: Rc<dyn Fn(&Obj, &Morphism) -> Result<bool>>,
    f_obj: Rc<dyn Fn(&Obj) -> Obj>,
}

impl std::fmt::Debug for AlgebraCategory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AlgebraCategory({})", self.cat.name)
    }
}

fn algebra_obj(base_obj: &Obj, structure: &Morphism) -> Obj {
    let id = format!("Alg({};{:?})", base_obj.id(), structure.table);
    Obj::new(id, base_obj.carrier().to_vec()).with_payload(format!("{:?}", structure.table))
}

impl AlgebraCategory {
    /// The base object and structure map of an algebra object.
    pub fn lookup(&self, alg: &Obj) -> Result<(Obj, Morphism)> {
        self.reg
            .borrow()
            .iter()
            .find(|(a, _, _)| a.id() == alg.id())
            .map(|(_, b, s)| (b.clone(), s.clone()))
            .ok_or_else(|| LabError::Other(format!("not an algebra object: {}", alg.id())))
    }
    /// Register (or retrieve) the algebra with the given carrier and
    /// structure map; rejects structures failing the admission laws.
    pub fn register(&self, base_obj: &Obj, structure: &Morphism) -> Result<Obj> {
        let fb = (self.f_obj)(base_obj);
        if structure.dom.id() != fb.id() || structure.cod != *base_obj {
            return Err(LabError::Other(format!(
                "structure map {} -> {} does not match carrier {}",
                structure.dom,
                structure.cod,
                base_obj.id()
            )));
        }
        if !(self.admit)(base_obj, structure)? {
            return Err(LabError::ValidationFailed(format!(
                "structure map on {} fails the algebra laws",
                base_obj.id()
            )));
        }
        let alg = algebra_obj(base_obj, structure);
        let mut reg = self.reg.borrow_mut();
        if !reg.iter().any(|(a, _, _)| a.id() == alg.id()) {
            reg.push((alg.clone(), base_obj.clone(), structure.clone()));
        }
        Ok(alg)
    }
}

/// Build a category of algebras for the endo-map `f_obj`/`f_mor` on a
/// concrete base, keeping only structure maps accepted by `admit`.
pub(crate) fn algebra_category(
    name: String,
    base: Category,
    f_obj: Rc<dyn Fn(&Obj) -> Obj>,
    f_mor: Rc<dyn Fn(&Morphism) -> Morphism>,
    admit: Rc<dyn Fn(&Obj, &Morphism) -> Result<bool>>,
) -> Result<AlgebraCategory> {
    let mut registry: Vec<(Obj, Obj, Morphism)> = Vec::new();
    for b in &base.probe {
        for bstr in base.hom(&f_obj(b), b)? {
            if admit(b, &bstr)? {
                registry.push((algebra_obj(b, &bstr), b.clone(), bstr));
            }
        }
    }
    let probe: Vec<Obj> = registry.iter().map(|(a, _, _)| a.clone()).collect();
    let reg = Rc::new(RefCell::new(registry));
    let lookup = {
        let reg = reg.clone();
        move |x: &Obj| -> Result<(Obj, Morphism)> {
            reg.borrow()
                .iter()
                .find(|(a, _, _)| a.id() == x.id())
                .map(|(_, b, s)| (b.clone(), s.clone()))
                .ok_or_else(|| LabError::Other(format!("not an algebra object: {}", x.id())))
        }
    };
    let objects = Some(probe.clone());
    let base_h = base.clone();
    let f_mor_h = f_mor.clone();
    let lookup_h = lookup.clone();
    let base_c = base.clone();
    let lookup_c = lookup.clone();
    let cat = Category::from_ops(
        name,
        probe.clone(),
        CatOps {
            hom: Box::new(move |x: &Obj, y: &Obj| {
                let (bx, xstr) = lookup_h(x)?;
                let (by, ystr) = lookup_h(y)?;
                let mut out = Vec::new();
                for h in base_h.hom(&bx, &by)? {
                    let lhs = base_h.compose(&h, &xstr)?;
                    let rhs = base_h.compose(&ystr, &f_mor_h(&h))?;
                    if lhs == rhs {
                        out.push(h.retag(x.clone(), y.clone()));
                    }
                }
                Ok(out)
            }),
            identity: Box::new(move |x: &Obj| {
                Morphism::new(
                    x.clone(),
                    x.clone(),
                    x.carrier().iter().map(|e| (e.clone(), e.clone())),
                )
            }),
            compose: Box::new(move |g: &Morphism, f: &Morphism| {
                let (bx, _) = lookup_c(&f.dom)?;
                let (by, _) = lookup_c(&f.cod)?;
                let (bz, _) = lookup_c(&g.cod)?;
                let comp = base_c.compose(
                    &g.retag(by.clone(), bz),
                    &f.retag(bx, by),
                )?;
                Ok(comp.retag(f.dom.clone(), g.cod.clone()))
            }),
            objects,
        },
    );
    let lookup_u = lookup.clone();
    let lookup_m = lookup;
    let forget = FunctorData::new(
        "U",
        cat.clone(),
        base,
        move |x: &Obj| lookup_u(x).expect("algebra object").0,
        move |m: &Morphism| {
            let find = |x: &Obj| lookup_m(x).expect("algebra object").0;
            m.retag(find(&m.dom), find(&m.cod))
        },
    );
    Ok(AlgebraCategory {
        cat,
        forget,
        reg,
        admit,
        f_obj,
    })
}

/// The category of F-algebras on probe carriers (every structure map is
/// admissible), with its forgetful functor.
pub fn falg_category(f0: &FunctorData) -> Result<AlgebraCategory> {
    let f1 = f0.clone();
    let f2 = f0.clone();
    algebra_category(
        format!("{}-Alg", f0.name),
        f0.source.clone(),
        Rc::new(move |x: &Obj| f1.obj(x)),
        Rc::new(move |m: &Morphism| f2.mor(m)),
        Rc::new(|_: &Obj, _: &Morphism| Ok(true)),
    )
}

/// Check that `fwd`/`bwd` form an isomorphism of categories commuting with
/// the two forgetful functors on the window — the witness that the monad of
/// a strongly free family is algebraically free.
pub fn is_algebraically_free(
    fwd: &FunctorData,
    bwd: &FunctorData,
    u_from: &FunctorData,
    u_to: &FunctorData,
) -> Result<bool> {
    let from = &fwd.source;
    let to = &fwd.target;
    for x in &from.probe {
        let fx = fwd.obj(x);
        if bwd.obj(&fx).id() != x.id() || u_to.obj(&fx) != u_from.obj(x) {
            return Ok(false);
        }
        for y in &from.probe {
            for m in from.hom(x, y)? {
                let fm = fwd.mor(&m);
                if bwd.mor(&fm) != m || u_to.mor(&fm) != u_from.mor(&m) {
                    return Ok(false);
                }
            }
        }
    }
    for x in &to.probe {
        let bx = bwd.obj(x);
        if fwd.obj(&bx).id() != x.id() || u_from.obj(&bx) != u_to.obj(x) {
            return Ok(false);
        }
        for y in &to.probe {
            for m in to.hom(x, y)? {
                let bm = bwd.mor(&m);
                if fwd.mor(&bm) != m || u_from.mor(&bm) != u_to.mor(&m) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// uniqueness over a well-pointed action
// ---------------------------------------------------------------------------

/// Enumerate the window candidates for monad morphisms T ⇒ T: component
/// families at probe objects compatible with the units and natural on probe
/// morphisms.
fn window_monad_morphism_components(
    sm: &MonadData,
    dm: &MonadData,
) -> Result<Vec<BTreeMap<String, Morphism>>> {
    let c = &sm.functor.source;
    let mut per_obj: Vec<(Obj, Vec<Morphism>)> = Vec::new();
    for x in &c.probe {
        let sx = sm.functor.obj(x);
        let tx = dm.functor.obj(x);
        let mut cands = Vec::new();
        for t in c.hom(&sx, &tx)? {
            if c.compose(&t, &sm.unit.at(x))? == dm.unit.at(x) {
                cands.push(t);
            }
        }
        per_obj.push((x.clone(), cands));
    }
    let mut out = Vec::new();
    if per_obj.iter().any(|(_, cs)| cs.is_empty()) {
        return Ok(out);
    }
    let mut idx = vec![0usize; per_obj.len()];
    loop {
        let fam: BTreeMap<String, Morphism> = per_obj
            .iter()
            .zip(&idx)
            .map(|((x, cs), i)| (x.id().to_string(), cs[*i].clone()))
            .collect();
        // naturality on probe morphisms
        let mut natural = true;
        'n: for x in &c.probe {
            for y in &c.probe {
                for u in c.hom(x, y)? {
                    let lhs = c.compose(&fam[y.id()], &sm.functor.mor(&u))?;
                    let rhs = c.compose(&dm.functor.mor(&u), &fam[x.id()])?;
                    if lhs != rhs {
                        natural = false;
                        break 'n;
                    }
                }
            }
        }
        if natural {
            out.push(fam);
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(out);
            }
            idx[k] += 1;
            if idx[k] < per_obj[k].1.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Over a well-pointed action, a monad plus a strength making the unit and
/// multiplication diagrams commute determines a unique strong monad, and
/// every window monad morphism out of it satisfies the strong (Kleisli)
/// morphism condition. Errors with the violated diagram otherwise.
pub fn unique_strong_monad_wp(md: &MonadData, s: &Strength) -> Result<KleisliStrongMonad> {
    let wp = is_well_pointed(&s.act_c)?;
    if !wp.holds {
        return Err(LabError::Other(
            "the action is not well-pointed on the window".into(),
        ));
    }
    let m = match strength_to_monad(md, s)? {
        StrengthToMonad::Monad(m) => m,
        StrengthToMonad::Fail(rep) => {
            return Err(LabError::Item3DiagramFailed(rep.summary()));
        }
    };
    // Every window monad-morphism candidate T ⇒ T must satisfy the strong
    // morphism condition in Kleisli form (the probe-decidable formulation).
    let a = &m.act;
    let c = &a.c;
    for fam in window_monad_morphism_components(md, md)? {
        for g in &a.v.base.probe {
            for x in &c.probe {
                let gx = a.act_obj(g, x);
                for y in &c.probe {
                    let ty = m.t_obj(y);
                    for f in c.hom(&gx, &ty)? {
                        let lhs = c.compose(&fam[y.id()], &m.extend(g, x, y, &f)?)?;
                        let tf = c.compose(&fam[y.id()], &f)?;
                        let rhs = c
                            .compose(&m.extend(g, x, y, &tf)?, &a.whisker_r(g, &fam[x.id()]))?;
                        if lhs != rhs {
                            return Err(LabError::Item3DiagramFailed(format!(
                                "a window monad morphism is not strong at Γ={}, X={}, Y={}",
                                g.id(),
                                x.id(),
                                y.id()
                            )));
                        }
                    }
                }
            }
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{self_action, validate_action};
    use crate::bounds::Bounds;
    use crate::core::{validate_category, validate_functor, Elem};
    use crate::corpus::*;
    use crate::strength::identity_strength;

    fn finset_action(sizes: &[usize]) -> LeftAction {
        let c = finset_sized(sizes, Bounds::default());
        self_action(&finset_cartesian(&c).unwrap())
    }

    fn z2_action() -> LeftAction {
        let c = z2act(Bounds::default());
        self_action(&z2act_cartesian(&c).unwrap())
    }

    fn setpt_action() -> LeftAction {
        let mut c = finsetpt(Bounds::default());
        c.probe.truncate(2);
        self_action(&finsetpt_cartesian(&c).unwrap())
    }

    /// Compare two strong monads componentwise over the window.
    fn extends_agree(m1: &KleisliStrongMonad, m2: &KleisliStrongMonad) -> bool {
        let a = &m1.act;
        let c = &a.c;
        for x in &c.probe {
            if m1.eta(x) != m2.eta(x) {
                return false;
            }
        }
        for g in &a.v.base.probe {
            for x in &c.probe {
                let gx = a.act_obj(g, x);
                for y in &c.probe {
                    let ty = m1.t_obj(y);
                    for f in c.hom(&gx, &ty).unwrap() {
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
    fn identity_monad_validates() {
        let a = finset_action(&[0, 1, 2]);
        let m = identity_strong_monad(&a);
        let rep = validate_strong_monad(&m).unwrap();
        assert!(rep.pass(), "{}", rep.summary());
        let md = underlying_monad(&m);
        assert!(validate_monad(&md).unwrap().pass());
    }

    #[test]
    fn terminal_monad_validates() {
        let a = finset_action(&[0, 1, 2]);
        let m = terminal_strong_monad(&a, &finset_obj(1));
        let rep = validate_strong_monad(&m).unwrap();
        assert!(rep.pass(), "{}", rep.summary());
    }

    #[test]
    fn exc_monad_validates() {
        let a = finset_action(&[1, 2]);
        let m = exc_strong_monad(&a, &finset_obj(1));
        let rep = validate_strong_monad(&m).unwrap();
        assert!(rep.pass(), "{}", rep.summary());
    }

    #[test]
    fn exc_underlying_mu_is_codiagonal() {
        let a = finset_action(&[0, 1, 2]);
        let e = finset_obj(1);
        let m = exc_strong_monad(&a, &e);
        let md = underlying_monad(&m);
        assert!(validate_monad(&md).unwrap().pass());
        let x = finset_obj(2);
        let mu = md.mult.at(&x);
        for el in mu.dom.carrier() {
            let expect = match el {
                Elem::Inl(inner) => (**inner).clone(),
                Elem::Inr(ev) => Elem::inr((**ev).clone()),
                _ => unreachable!(),
            };
            assert_eq!(mu.apply(el), expect, "μ is not the codiagonal at {el:?}");
        }
    }

    #[test]
    fn writer_forms_validate_and_differ() {
        let a = z2_action();
        let canon = writer_z2_monad(&a, WriterForm::Canonical);
        let twist = writer_z2_monad(&a, WriterForm::Twisted);
        assert!(validate_strong_monad(&canon).unwrap().pass());
        assert!(validate_strong_monad(&twist).unwrap().pass());
        // same underlying monad
        let mdc = underlying_monad(&canon);
        let mdt = underlying_monad(&twist);
        for x in &a.c.probe {
            assert_eq!(mdc.mult.at(x), mdt.mult.at(x));
            assert_eq!(mdc.unit.at(x), mdt.unit.at(x));
        }
        // distinct strengths
        let sc = monad_to_strength(&canon).window_table().unwrap();
        let st = monad_to_strength(&twist).window_table().unwrap();
        assert_ne!(sc, st, "the two writer strengths should differ");
    }

    #[test]
    fn writer_mutant_dropping_log_fails() {
        let a = z2_action();
        let good = writer_z2_monad(&a, WriterForm::Canonical);
        let a1 = a.clone();
        let g2 = good.clone();
        let g3 = good.clone();
        let mutant = KleisliStrongMonad::new(
            a.clone(),
            "writer-mutant",
            move |x: &Obj| g2.t_obj(x),
            move |x: &Obj| g3.eta(x),
            move |g: &Obj, x: &Obj, y: &Obj, f: &Morphism| {
                // forget the incoming log entirely
                let tx = writer_z2_monad(&a1, WriterForm::Canonical).t_obj(x);
                let ty = writer_z2_monad(&a1, WriterForm::Canonical).t_obj(y);
                let dom = a1.act_obj(g, &tx);
                let table: Vec<(Elem, Elem)> = dom
                    .carrier()
                    .iter()
                    .map(|el| match el {
                        Elem::Pair(gv, p) => match &**p {
                            Elem::Pair(xv, _mv) => (
                                el.clone(),
                                f.apply(&Elem::pair((**gv).clone(), (**xv).clone())),
                            ),
                            _ => unreachable!(),
                        },
                        _ => unreachable!(),
                    })
                    .collect();
                Ok(Morphism::new(dom, ty, table))
            },
        );
        let rep = validate_strong_monad(&mutant).unwrap();
        assert!(!rep.pass());
        assert!(
            rep.failures.iter().any(|f| f.law == "kleisli-unit-lambda"),
            "{}",
            rep.summary()
        );
    }

    #[test]
    fn strength_to_monad_exc_roundtrip() {
        let a = finset_action(&[1, 2]);
        let e = finset_obj(1);
        let m = exc_strong_monad(&a, &e);
        let md = underlying_monad(&m);
        let s = exc_strength(&a, &e);
        match strength_to_monad(&md, &s).unwrap() {
            StrengthToMonad::Monad(m2) => {
                assert!(extends_agree(&m, &m2), "round trip changed the extension")
            }
            StrengthToMonad::Fail(rep) => panic!("{}", rep.summary()),
        }
        // and the extracted strength is the canonical one
        let s2 = monad_to_strength(&m);
        assert_eq!(s.window_table().unwrap(), s2.window_table().unwrap());
    }

    #[test]
    fn star_strength_fails_eta_triangle_for_identity_monad() {
        let a = setpt_action();
        let md = underlying_monad(&identity_strong_monad(&a));
        let s = star_strength(&a);
        match strength_to_monad(&md, &s).unwrap() {
            StrengthToMonad::Fail(rep) => {
                assert!(rep.failures.iter().any(|f| f.law == "eta-triangle"));
            }
            StrengthToMonad::Monad(_) => panic!("⋆-strength must not yield a strong monad"),
        }
    }

    #[test]
    fn kleisli_category_validates() {
        let a = finset_action(&[0, 1, 2]);
        let e = finset_obj(1);
        let md = underlying_monad(&exc_strong_monad(&a, &e));
        let kl = kleisli_category(&md);
        let rep = validate_category(&kl).unwrap();
        assert!(rep.pass(), "{}", rep.summary());
        // identity monad: Kleisli category has the same hom counts as the base
        let mdi = underlying_monad(&identity_strong_monad(&a));
        let kli = kleisli_category(&mdi);
        for x in &a.c.probe {
            for y in &a.c.probe {
                assert_eq!(
                    kli.hom(x, y).unwrap().len(),
                    a.c.hom(x, y).unwrap().len()
                );
            }
        }
    }

    #[test]
    fn kleisli_lifting_roundtrip() {
        let a = finset_action(&[1, 2]);
        let e = finset_obj(1);
        let m = exc_strong_monad(&a, &e);
        let l = kleisli_lifting(&m);
        assert!(lifting_square_commutes(&l).unwrap());
        // Validating the lifted action needs inverse searches inside the
        // Kleisli category, so run it on the smaller window where those
        // hom-sets stay within bounds.
        let a_small = finset_action(&[0, 1]);
        let l_small = kleisli_lifting(&exc_strong_monad(&a_small, &e));
        let rep = validate_action(&l_small.lifted).unwrap();
        assert!(rep.pass(), "{}", rep.summary());
        let s1 = lifting_to_strength(&l).unwrap();
        let s2 = monad_to_strength(&m);
        assert_eq!(s1.window_table().unwrap(), s2.window_table().unwrap());
    }

    #[test]
    fn four_way_roundtrip_writer() {
        let a = z2_action();
        for form in [WriterForm::Canonical, WriterForm::Twisted] {
            let m = writer_z2_monad(&a, form);
            let md = underlying_monad(&m);
            let s = monad_to_strength(&m);
            match strength_to_monad(&md, &s).unwrap() {
                StrengthToMonad::Monad(m2) => assert!(extends_agree(&m, &m2)),
                StrengthToMonad::Fail(rep) => panic!("{}", rep.summary()),
            }
            let l = kleisli_lifting(&m);
            let s3 = lifting_to_strength(&l).unwrap();
            assert_eq!(s.window_table().unwrap(), s3.window_table().unwrap());
        }
    }

    #[test]
    fn monad_morphism_examples() {
        let a = finset_action(&[1, 2]);
        let e = finset_obj(1);
        let id_m = identity_strong_monad(&a);
        let exc_m = exc_strong_monad(&a, &e);
        let exc_md = underlying_monad(&exc_m);
        // inl : Id ⇒ Exc is a strong monad morphism
        let e1 = e.clone();
        let tau = NaturalData::new(
            "inl",
            FunctorData::identity(&a.c),
            exc_md.functor.clone(),
            move |x: &Obj| concrete_coproduct(x, &e1).1,
        );
        assert!(validate_strong_monad_morphism(&tau, &id_m, &exc_m).unwrap());
        // the identity on Exc is one too
        let idt = NaturalData::identity(&exc_md.functor);
        assert!(validate_strong_monad_morphism(&idt, &exc_m, &exc_m).unwrap());
        // identity components are NOT a strong monad morphism between the
        // two writer forms, under all four formulations at once
        let az = z2_action();
        let canon = writer_z2_monad(&az, WriterForm::Canonical);
        let twist = writer_z2_monad(&az, WriterForm::Twisted);
        let mdw = underlying_monad(&canon);
        let idw = NaturalData::identity(&mdw.functor);
        assert!(!validate_strong_monad_morphism(&idw, &canon, &twist).unwrap());
    }

    #[test]
    fn delta_algebra_is_strongly_free() {
        let a = finset_action(&[0, 1, 2]);
        let e = finset_obj(1);
        let f = strength_to_ctxform(&const_strength(&a, &e));
        for x in &a.c.probe {
            let cand = delta_free_candidate(x, &e);
            assert!(is_strongly_free(&f, &cand).unwrap(), "at X={}", x.id());
        }
        // mutant with a doubled exception summand is not strongly free
        let x = finset_obj(1);
        let (xe, i1, _i2) = concrete_coproduct(&x, &e);
        let (xee, j1, j2) = concrete_coproduct(&xe, &e);
        let bad = StronglyFreeCandidate {
            base: x.clone(),
            algebra: FAlgebra {
                carrier: xee.clone(),
                structure: j2,
            },
            inject: a.c.compose(&j1, &i1).unwrap(),
        };
        assert!(!is_strongly_free(&f, &bad).unwrap());
    }

    #[test]
    fn strongly_free_monad_is_the_exception_monad() {
        let a = finset_action(&[0, 1]);
        let e = finset_obj(1);
        let f = strength_to_ctxform(&const_strength(&a, &e));
        let e1 = e.clone();
        let free = monad_from_strongly_free(&f, move |x| delta_free_candidate(x, &e1));
        let exc = exc_strong_monad(&a, &e);
        assert!(extends_agree(&free, &exc));
        assert!(validate_strong_monad(&free).unwrap().pass());
    }

    #[test]
    fn falg_category_and_forgetful_validate() {
        let a = finset_action(&[0, 1]);
        let e = finset_obj(1);
        let f0 = const_functor(&a.c, &e);
        let alg = falg_category(&f0).unwrap();
        let (cat, u) = (alg.cat.clone(), alg.forget.clone());
        assert!(validate_category(&cat).unwrap().pass());
        assert!(validate_functor(&u).unwrap().pass());
        // identity iso commuting with the forgetful functor on both sides
        let idf = FunctorData::identity(&cat);
        assert!(is_algebraically_free(&idf, &idf, &u, &u).unwrap());
    }

    #[test]
    fn unique_strong_monad_over_well_pointed_action() {
        let a = finset_action(&[1, 2]);
        let e = finset_obj(1);
        let m = exc_strong_monad(&a, &e);
        let md = underlying_monad(&m);
        let s = exc_strength(&a, &e);
        let got = unique_strong_monad_wp(&md, &s).unwrap();
        assert!(extends_agree(&m, &got));
        // identity monad over finpos
        let c = finpos(Bounds::default());
        let ap = self_action(&finpos_cartesian(&c).unwrap());
        let idm = identity_strong_monad(&ap);
        let mdp = underlying_monad(&idm);
        let got2 = unique_strong_monad_wp(&mdp, &identity_strength(&ap)).unwrap();
        assert!(extends_agree(&idm, &got2));
    }

    #[test]
    fn unique_strong_monad_rejects_bad_input() {
        // not well-pointed: the pointed-sets window
        let a = setpt_action();
        let md = underlying_monad(&identity_strong_monad(&a));
        assert!(unique_strong_monad_wp(&md, &star_strength(&a)).is_err());
        // well-pointed but the unit diagram fails: a constant pseudo-strength
        let af = finset_action(&[1, 2]);
        let mdf = underlying_monad(&identity_strong_monad(&af));
        let af1 = af.clone();
        let bad = Strength::new(
            FunctorData::identity(&af.c),
            af.clone(),
            af.clone(),
            "collapse",
            move |g, x| {
                let gx = af1.act_obj(g, x);
                let g0 = g.carrier()[0].clone();
                let table: Vec<(Elem, Elem)> = gx
                    .carrier()
                    .iter()
                    .map(|el| match el {
                        Elem::Pair(_, xv) => {
                            (el.clone(), Elem::pair(g0.clone(), (**xv).clone()))
                        }
                        _ => unreachable!(),
                    })
                    .collect();
                Ok(Morphism::new(gx.clone(), gx, table))
            },
        );
        match unique_strong_monad_wp(&mdf, &bad) {
            Err(LabError::Item3DiagramFailed(_)) => {}
            other => panic!("expected Item3DiagramFailed, got {other:?}"),
        }
    }
}
