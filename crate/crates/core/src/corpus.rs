//! Builders for the named example instances and randomized small categories.

use std::collections::BTreeMap;
use std::rc::Rc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::Bounds;
use crate::core::{
    validate_category, Category, Elem, FunctorData, MonoidAction, MonoidTable, Morphism,
    Obj,
};
use crate::action::{self_action, LeftAction, PointFamily, WFCStructure};
use crate::enrichment::Adjunction;
use crate::error::{LabError, Result};
use crate::monoidal::{
    cartesian_monoidal, cocartesian_monoidal, CoproductChooser, MonoidalStructure, ProductChooser,
};
use crate::strength::Strength;
use crate::strongmonad::{
    kleisli_category, underlying_monad, FAlgebra, KleisliStrongMonad, MonadData,
    StronglyFreeCandidate,
};

// ---------------------------------------------------------------------------
// generic concrete (co)cartesian choosers
// ---------------------------------------------------------------------------

/// Chosen product of two concrete objects: pair carrier, componentwise
/// decorations, and the two projections.
pub fn concrete_product(a: &Obj, b: &Obj) -> (Obj, Morphism, Morphism) {
    let carrier: Vec<Elem> = a
        .carrier()
        .iter()
        .flat_map(|x| {
            b.carrier()
                .iter()
                .map(move |y| Elem::pair(x.clone(), y.clone()))
        })
        .collect();
    let mut p = Obj::new(format!("({}×{})", a.id(), b.id()), carrier.clone());
    if let (Some(pa), Some(pb)) = (a.point(), b.point()) {
        p = p.with_point(Elem::pair(pa.clone(), pb.clone()));
    }
    if let (Some(oa), Some(ob)) = (&a.0.order, &b.0.order) {
        let mut order = Vec::new();
        for (x1, y1) in oa {
            for (x2, y2) in ob {
                order.push((
                    Elem::pair(x1.clone(), x2.clone()),
                    Elem::pair(y1.clone(), y2.clone()),
                ));
            }
        }
        p = p.with_order(order);
    }
    if let (Some(aa), Some(ab)) = (&a.0.mact, &b.0.mact) {
        if aa.monoid == ab.monoid {
            let mut table = Vec::new();
            for x in a.carrier() {
                for y in b.carrier() {
                    for m in &aa.monoid.elems {
                        table.push((
                            (Elem::pair(x.clone(), y.clone()), m.clone()),
                            Elem::pair(
                                aa.act(x, m).unwrap().clone(),
                                ab.act(y, m).unwrap().clone(),
                            ),
                        ));
                    }
                }
            }
            p = p.with_mact(MonoidAction {
                monoid: aa.monoid.clone(),
                table,
            });
        }
    }
    let p1 = Morphism::new(
        p.clone(),
        a.clone(),
        carrier.iter().map(|e| match e {
            Elem::Pair(x, _) => (e.clone(), (**x).clone()),
            _ => unreachable!(),
        }),
    );
    let p2 = Morphism::new(
        p.clone(),
        b.clone(),
        carrier.iter().map(|e| match e {
            Elem::Pair(_, y) => (e.clone(), (**y).clone()),
            _ => unreachable!(),
        }),
    );
    (p, p1, p2)
}

/// The concrete Cartesian chooser for any category of decorated sets whose
/// products are carrier products.
pub fn concrete_chooser(terminal: Obj) -> ProductChooser {
    let t = terminal.clone();
    let t_elem = terminal
        .carrier()
        .first()
        .expect("terminal object has one element")
        .clone();
    ProductChooser {
        terminal,
        product: Rc::new(|a, b| concrete_product(a, b)),
        pair: Rc::new(|f: &Morphism, g: &Morphism| {
            assert_eq!(f.dom, g.dom, "pairing requires a common domain");
            let cod = concrete_product(&f.cod, &g.cod).0;
            Morphism::new(
                f.dom.clone(),
                cod,
                f.dom
                    .carrier()
                    .iter()
                    .map(|z| (z.clone(), Elem::pair(f.apply(z), g.apply(z)))),
            )
        }),
        bang: Rc::new(move |z: &Obj| {
            Morphism::new(
                z.clone(),
                t.clone(),
                z.carrier().iter().map(|e| (e.clone(), t_elem.clone())),
            )
        }),
    }
}

/// Chosen coproduct of two concrete objects (disjoint union, no decorations).
pub fn concrete_coproduct(a: &Obj, b: &Obj) -> (Obj, Morphism, Morphism) {
    let carrier: Vec<Elem> = a
        .carrier()
        .iter()
        .map(|x| Elem::inl(x.clone()))
        .chain(b.carrier().iter().map(|y| Elem::inr(y.clone())))
        .collect();
    let s = Obj::new(format!("({}+{})", a.id(), b.id()), carrier);
    let i1 = Morphism::new(
        s.clone(),
        s.clone(),
        std::iter::empty::<(Elem, Elem)>(),
    );
    let _ = i1;
    let i1 = Morphism::new(
        a.clone(),
        s.clone(),
        a.carrier()
            .iter()
            .map(|x| (x.clone(), Elem::inl(x.clone()))),
    );
    let i2 = Morphism::new(
        b.clone(),
        s.clone(),
        b.carrier()
            .iter()
            .map(|y| (y.clone(), Elem::inr(y.clone()))),
    );
    (s, i1, i2)
}

/// The concrete coCartesian chooser for plain finite sets.
pub fn concrete_cochooser(initial: Obj) -> CoproductChooser {
    let i = initial.clone();
    CoproductChooser {
        initial,
        coproduct: Rc::new(|a, b| concrete_coproduct(a, b)),
        copair: Rc::new(|f: &Morphism, g: &Morphism| {
            assert_eq!(f.cod, g.cod, "copairing requires a common codomain");
            let dom = concrete_coproduct(&f.dom, &g.dom).0;
            Morphism::new(
                dom.clone(),
                f.cod.clone(),
                dom.carrier().iter().map(|e| {
                    let v = match e {
                        Elem::Inl(x) => f.apply(x),
                        Elem::Inr(y) => g.apply(y),
                        _ => unreachable!(),
                    };
                    (e.clone(), v)
                }),
            )
        }),
        cobang: Rc::new(move |z: &Obj| Morphism::new(i.clone(), z.clone(), std::iter::empty())),
    }
}

// ---------------------------------------------------------------------------
// finset / bool2
// ---------------------------------------------------------------------------

/// A plain finite set object with `n` elements named `0..n`.
pub fn finset_obj(n: usize) -> Obj {
    Obj::new(
        n.to_string(),
        (0..n).map(|i| Elem::atom(i.to_string())).collect(),
    )
}

/// The computable category of finite sets with the given probe sizes.
pub fn finset_sized(sizes: &[usize], bounds: Bounds) -> Category {
    Category::concrete(
        "finset",
        sizes.iter().map(|&n| finset_obj(n)).collect(),
        bounds,
    )
}

/// Finite sets with the default probe [0, 1, 2].
pub fn finset(bounds: Bounds) -> Category {
    finset_sized(&[0, 1, 2], bounds)
}

pub fn finset_cartesian(c: &Category) -> Result<MonoidalStructure> {
    cartesian_monoidal(c, &concrete_chooser(finset_obj(1)))
}

pub fn finset_cocartesian(c: &Category) -> Result<MonoidalStructure> {
    cocartesian_monoidal(c, &concrete_cochooser(finset_obj(0)))
}

/// The thin two-object category {0 ≤ 1}, realized as finite sets of sizes
/// 0 and 1 (so homs are empty or singletons).
pub fn bool2(bounds: Bounds) -> Category {
    Category::concrete("bool2", vec![finset_obj(0), finset_obj(1)], bounds)
}

pub fn bool2_meet(c: &Category) -> Result<MonoidalStructure> {
    cartesian_monoidal(c, &concrete_chooser(finset_obj(1)))
}

/// Join as a chosen coproduct on the bool2 window (thin, so the union
/// object with identity-like injections is a coproduct there).
pub fn bool2_join(c: &Category) -> Result<MonoidalStructure> {
    let join = Rc::new(|a: &Obj, b: &Obj| {
        let s = if a.carrier().is_empty() && b.carrier().is_empty() {
            finset_obj(0)
        } else {
            finset_obj(1)
        };
        let into = |x: &Obj, s: &Obj| {
            Morphism::new(
                x.clone(),
                s.clone(),
                x.carrier()
                    .iter()
                    .map(|e| (e.clone(), s.carrier()[0].clone())),
            )
        };
        (s.clone(), into(a, &s), into(b, &s))
    });
    let join2 = join.clone();
    let ch = CoproductChooser {
        initial: finset_obj(0),
        coproduct: join2,
        copair: Rc::new(|f: &Morphism, g: &Morphism| {
            assert_eq!(f.cod, g.cod);
            let dom = if f.dom.carrier().is_empty() && g.dom.carrier().is_empty() {
                finset_obj(0)
            } else {
                finset_obj(1)
            };
            let val = f
                .table
                .values()
                .chain(g.table.values())
                .next()
                .cloned();
            Morphism::new(
                dom.clone(),
                f.cod.clone(),
                dom.carrier().iter().map(|e| {
                    (
                        e.clone(),
                        val.clone().expect("copair into inhabited object"),
                    )
                }),
            )
        }),
        cobang: Rc::new(|z: &Obj| {
            Morphism::new(finset_obj(0), z.clone(), std::iter::empty())
        }),
    };
    cocartesian_monoidal(c, &ch)
}

// ---------------------------------------------------------------------------
// finsetpt (pointed sets): cartesian and smash structures
// ---------------------------------------------------------------------------

fn star() -> Elem {
    Elem::atom("*")
}

/// A pointed set with basepoint `*` and `n` further elements `a0..`.
pub fn finsetpt_obj(n: usize) -> Obj {
    let mut carrier = vec![star()];
    carrier.extend((0..n).map(|i| Elem::atom(format!("a{i}"))));
    Obj::new(format!("P{}", n + 1), carrier).with_point(star())
}

/// Pointed sets with probe [P1, P2, P3].
pub fn finsetpt(bounds: Bounds) -> Category {
    Category::concrete(
        "finsetpt",
        vec![finsetpt_obj(0), finsetpt_obj(1), finsetpt_obj(2)],
        bounds,
    )
}

pub fn finsetpt_cartesian(c: &Category) -> Result<MonoidalStructure> {
    cartesian_monoidal(c, &concrete_chooser(finsetpt_obj(0)))
}

fn smash_obj(a: &Obj, b: &Obj) -> Obj {
    let pa = a.point().expect("pointed").clone();
    let pb = b.point().expect("pointed").clone();
    let mut carrier = vec![Elem::pair(pa.clone(), pb.clone())];
    for x in a.carrier() {
        for y in b.carrier() {
            if *x != pa && *y != pb {
                carrier.push(Elem::pair(x.clone(), y.clone()));
            }
        }
    }
    Obj::new(format!("({}∧{})", a.id(), b.id()), carrier)
        .with_point(Elem::pair(pa, pb))
}

fn smash_apply(f: &Morphism, g: &Morphism, e: &Elem) -> Elem {
    let pc = f.cod.point().expect("pointed").clone();
    let pd = g.cod.point().expect("pointed").clone();
    match e {
        Elem::Pair(x, y) => {
            let fx = f.apply(x);
            let gy = g.apply(y);
            if fx == pc || gy == pd {
                Elem::pair(pc, pd)
            } else {
                Elem::pair(fx, gy)
            }
        }
        _ => unreachable!(),
    }
}

/// The smash-product monoidal structure on pointed sets, with unit {*, 1}.
pub fn finsetpt_smash(c: &Category) -> Result<MonoidalStructure> {
    let unit = Obj::new("I∧", vec![star(), Elem::atom("1")]).with_point(star());
    let prod_cat = crate::core::product_category(c, c);
    let tensor = FunctorData::new(
        "∧",
        prod_cat,
        c.clone(),
        |x: &Obj| {
            let (a, b) = x.parts().expect("pair object");
            smash_obj(a, b)
        },
        |m: &Morphism| {
            let (f, g) = crate::core::unpair_mor(m).expect("pair morphism");
            let dom = smash_obj(&f.dom, &g.dom);
            let cod = smash_obj(&f.cod, &g.cod);
            Morphism::new(
                dom.clone(),
                cod,
                dom.carrier()
                    .iter()
                    .map(|e| (e.clone(), smash_apply(&f, &g, e))),
            )
        },
    );
    let u1 = unit.clone();
    let u2 = unit.clone();
    let one = Elem::atom("1");
    let one2 = one.clone();
    let braiding = Rc::new(move |a: &Obj, b: &Obj| {
        let dom = smash_obj(a, b);
        let cod = smash_obj(b, a);
        Morphism::new(
            dom.clone(),
            cod,
            dom.carrier().iter().map(|e| match e {
                Elem::Pair(x, y) => (e.clone(), Elem::pair((**y).clone(), (**x).clone())),
                _ => unreachable!(),
            }),
        )
    });
    Ok(MonoidalStructure::new(
        c.clone(),
        unit.clone(),
        tensor,
        move |g: &Obj| {
            // λ_Γ : I∧Γ → Γ, (1,γ) ↦ γ, basepoint ↦ basepoint
            let dom = smash_obj(&u1, g);
            let pg = g.point().unwrap().clone();
            Morphism::new(
                dom.clone(),
                g.clone(),
                dom.carrier().iter().map(|e| match e {
                    Elem::Pair(i, y) => {
                        let v = if **i == one { (**y).clone() } else { pg.clone() };
                        (e.clone(), v)
                    }
                    _ => unreachable!(),
                }),
            )
        },
        move |g: &Obj| {
            // ρ_Γ : Γ → Γ∧I, γ ↦ (γ,1) for γ ≠ *, * ↦ basepoint
            let cod = smash_obj(g, &u2);
            let pg = g.point().unwrap().clone();
            Morphism::new(
                g.clone(),
                cod,
                g.carrier().iter().map(|x| {
                    let v = if *x == pg {
                        Elem::pair(pg.clone(), star())
                    } else {
                        Elem::pair(x.clone(), one2.clone())
                    };
                    (x.clone(), v)
                }),
            )
        },
        |a: &Obj, b: &Obj, d: &Obj| {
            let ab = smash_obj(a, b);
            let dom = smash_obj(&ab, d);
            let bd = smash_obj(b, d);
            let cod = smash_obj(a, &bd);
            let base = cod.point().unwrap().clone();
            Morphism::new(
                dom.clone(),
                cod,
                dom.carrier().iter().map(|e| {
                    let v = match e {
                        Elem::Pair(w, z) => match &**w {
                            Elem::Pair(x, y) => {
                                let cand =
                                    Elem::pair((**x).clone(), Elem::pair((**y).clone(), (**z).clone()));
                                if **w == *ab.point().unwrap() {
                                    base.clone()
                                } else {
                                    cand
                                }
                            }
                            _ => unreachable!(),
                        },
                        _ => unreachable!(),
                    };
                    (e.clone(), v)
                }),
            )
        },
        Some(braiding),
    ))
}

// ---------------------------------------------------------------------------
// finpos (finite posets)
// ---------------------------------------------------------------------------

/// The n-element chain 0 ≤ 1 ≤ … ≤ n-1.
pub fn chain_obj(n: usize) -> Obj {
    let elems: Vec<Elem> = (0..n).map(|i| Elem::atom(i.to_string())).collect();
    let mut order = Vec::new();
    for i in 0..n {
        for j in i..n {
            order.push((elems[i].clone(), elems[j].clone()));
        }
    }
    Obj::new(format!("chain{n}"), elems).with_order(order)
}

/// The n-element discrete poset.
pub fn discrete_obj(n: usize) -> Obj {
    let elems: Vec<Elem> = (0..n).map(|i| Elem::atom(i.to_string())).collect();
    let order = elems.iter().map(|e| (e.clone(), e.clone())).collect();
    Obj::new(format!("disc{n}"), elems).with_order(order)
}

/// Finite posets with probe [chain1, chain2, disc2].
pub fn finpos(bounds: Bounds) -> Category {
    Category::concrete(
        "finpos",
        vec![chain_obj(1), chain_obj(2), discrete_obj(2)],
        bounds,
    )
}

pub fn finpos_cartesian(c: &Category) -> Result<MonoidalStructure> {
    cartesian_monoidal(c, &concrete_chooser(chain_obj(1)))
}

// ---------------------------------------------------------------------------
// z2act (right Z₂-actions)
// ---------------------------------------------------------------------------

pub fn z2_monoid() -> MonoidTable {
    let e = Elem::atom("1");
    let g = Elem::atom("g");
    MonoidTable {
        elems: vec![e.clone(), g.clone()],
        unit: e.clone(),
        mul: vec![
            ((e.clone(), e.clone()), e.clone()),
            ((e.clone(), g.clone()), g.clone()),
            ((g.clone(), e.clone()), g.clone()),
            ((g.clone(), g.clone()), e),
        ],
    }
}

/// A Z₂-set with trivial action on `n` elements.
pub fn z2_trivial_obj(n: usize, id: &str) -> Obj {
    let m = z2_monoid();
    let elems: Vec<Elem> = (0..n).map(|i| Elem::atom(i.to_string())).collect();
    let table = elems
        .iter()
        .flat_map(|x| {
            m.elems
                .iter()
                .map(move |mm| ((x.clone(), mm.clone()), x.clone()))
        })
        .collect();
    Obj::new(id, elems).with_mact(MonoidAction { monoid: m, table })
}

/// Z₂ acting on itself by multiplication (the regular action).
pub fn z2_regular_obj() -> Obj {
    let m = z2_monoid();
    let table = m
        .elems
        .iter()
        .flat_map(|x| {
            let m2 = m.clone();
            m.elems.iter().map(move |mm| {
                ((x.clone(), mm.clone()), m2.mul(x, mm).unwrap().clone())
            })
        })
        .collect::<Vec<_>>();
    Obj::new("Z2", m.elems.clone()).with_mact(MonoidAction { monoid: m, table })
}

/// Right Z₂-actions with probe [1, Z2 (regular)].
pub fn z2act(bounds: Bounds) -> Category {
    Category::concrete(
        "z2act",
        vec![z2_trivial_obj(1, "T1"), z2_regular_obj()],
        bounds,
    )
}

pub fn z2act_cartesian(c: &Category) -> Result<MonoidalStructure> {
    cartesian_monoidal(c, &concrete_chooser(z2_trivial_obj(1, "T1")))
}

// ---------------------------------------------------------------------------
// random table categories
// ---------------------------------------------------------------------------

/// Generate a small valid table-presented category deterministically from a
/// seed: a free composition closure over a random graph, quotiented by the
/// congruence induced by interpreting arrows as functions.
pub fn random_category(seed: u64, max_objects: usize, max_hom: usize) -> Result<Category> {
    if max_objects > 4 || max_hom > 3 {
        return Err(LabError::ParamOutOfBounds(
            "random_category bounds: ≤4 objects, hom ≤3".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _attempt in 0..32 {
        let n_obj = rng.gen_range(1..=max_objects.max(1));
        let objs: Vec<Obj> = (0..n_obj)
            .map(|i| {
                let size = rng.gen_range(1..=2usize);
                Obj::new(
                    format!("R{i}"),
                    (0..size).map(|k| Elem::atom(format!("e{k}"))).collect(),
                )
            })
            .collect();
        // interpret arrows as concrete functions so composition closes by
        // construction; keep only a random subset of generators, then close
        let mut morphs: BTreeMap<String, Morphism> = BTreeMap::new();
        for o in &objs {
            morphs.insert(format!("id_{}", o.id()), Morphism::identity(o));
        }
        let mut gen_count = 0;
        for a in &objs {
            for b in &objs {
                if rng.gen_bool(0.5) || a == b {
                    continue;
                }
                // one random function table a→b
                let table: BTreeMap<Elem, Elem> = a
                    .carrier()
                    .iter()
                    .map(|e| {
                        let idx = rng.gen_range(0..b.carrier().len());
                        (e.clone(), b.carrier()[idx].clone())
                    })
                    .collect();
                morphs.insert(
                    format!("g{gen_count}"),
                    Morphism {
                        dom: a.clone(),
                        cod: b.clone(),
                        table,
                    },
                );
                gen_count += 1;
            }
        }
        // free composition closure (functions compose, so this terminates)
        loop {
            let snapshot: Vec<Morphism> = morphs.values().cloned().collect();
            let mut added = false;
            for f in &snapshot {
                for g in &snapshot {
                    if f.cod == g.dom {
                        let h = g.after_table(f);
                        if !morphs.values().any(|m| *m == h) {
                            morphs.insert(format!("c{}", morphs.len()), h);
                            added = true;
                        }
                    }
                }
            }
            if !added {
                break;
            }
        }
        // hom-size bound
        let mut ok = true;
        for a in &objs {
            for b in &objs {
                let count = morphs
                    .values()
                    .filter(|m| m.dom == *a && m.cod == *b)
                    .count();
                if count > max_hom {
                    ok = false;
                }
            }
        }
        if !ok {
            continue;
        }
        // build the compose table from function composition
        let by_mor: BTreeMap<Morphism, String> =
            morphs.iter().map(|(n, m)| (m.clone(), n.clone())).collect();
        let mut comp = BTreeMap::new();
        for (fname, f) in &morphs {
            for (gname, g) in &morphs {
                if f.cod == g.dom {
                    let h = g.after_table(f);
                    comp.insert((gname.clone(), fname.clone()), by_mor[&h].clone());
                }
            }
        }
        let cat = Category::table(
            format!("random{seed}"),
            objs.clone(),
            morphs.into_iter().collect(),
            comp,
            objs,
        );
        if validate_category(&cat)?.pass() {
            return Ok(cat);
        }
    }
    Err(LabError::GenerationFailed)
}

// ---------------------------------------------------------------------------
// named functors
// ---------------------------------------------------------------------------

/// The squaring endofunctor X ↦ X×X (chosen concrete products).
pub fn square_functor(c: &Category) -> FunctorData {
    FunctorData::new(
        "square",
        c.clone(),
        c.clone(),
        |x: &Obj| concrete_product(x, x).0,
        |f: &Morphism| {
            let dom = concrete_product(&f.dom, &f.dom).0;
            let cod = concrete_product(&f.cod, &f.cod).0;
            let table: Vec<(Elem, Elem)> = dom
                .carrier()
                .iter()
                .map(|e| match e {
                    Elem::Pair(a, b) => (e.clone(), Elem::pair(f.apply(a), f.apply(b))),
                    _ => unreachable!(),
                })
                .collect();
            Morphism::new(dom, cod, table)
        },
    )
}

/// Strip a poset to the discrete poset on the same carrier.
pub fn disc_obj_of(x: &Obj) -> Obj {
    let carrier = x.carrier().to_vec();
    let order = carrier.iter().map(|e| (e.clone(), e.clone())).collect();
    Obj::new(format!("D({})", x.id()), carrier).with_order(order)
}

/// The discretization endofunctor on posets.
pub fn disc_functor(c: &Category) -> FunctorData {
    FunctorData::new(
        "disc",
        c.clone(),
        c.clone(),
        |x: &Obj| disc_obj_of(x),
        |f: &Morphism| {
            Morphism::new(
                disc_obj_of(&f.dom),
                disc_obj_of(&f.cod),
                f.table.clone(),
            )
        },
    )
}

/// The constant endofunctor at `e` (morphisms go to the identity).
pub fn const_functor(c: &Category, e: &Obj) -> FunctorData {
    let e1 = e.clone();
    let e2 = e.clone();
    let c1 = c.clone();
    FunctorData::new(
        format!("const{}", e.id()),
        c.clone(),
        c.clone(),
        move |_x: &Obj| e1.clone(),
        move |_f: &Morphism| c1.identity(&e2),
    )
}

/// The exception-shape endofunctor X ↦ X+E on plain finite sets.
pub fn exc_functor(c: &Category, e: &Obj) -> FunctorData {
    let e1 = e.clone();
    let e2 = e.clone();
    FunctorData::new(
        format!("(-+{})", e.id()),
        c.clone(),
        c.clone(),
        move |x: &Obj| concrete_coproduct(x, &e1).0,
        move |f: &Morphism| {
            let dom = concrete_coproduct(&f.dom, &e2).0;
            let cod = concrete_coproduct(&f.cod, &e2).0;
            let table: Vec<(Elem, Elem)> = dom
                .carrier()
                .iter()
                .map(|el| match el {
                    Elem::Inl(x) => (el.clone(), Elem::inl(f.apply(x))),
                    Elem::Inr(y) => (el.clone(), Elem::inr((**y).clone())),
                    _ => unreachable!(),
                })
                .collect();
            Morphism::new(dom, cod, table)
        },
    )
}

// ---------------------------------------------------------------------------
// named strengths
// ---------------------------------------------------------------------------

/// str(γ,x) = (⋆,x) for the identity functor on a pointed self-action:
/// collapses the context to its basepoint.
pub fn star_strength(a: &LeftAction) -> Strength {
    let a1 = a.clone();
    Strength::new(
        FunctorData::identity(&a.c),
        a.clone(),
        a.clone(),
        "star",
        move |g, x| {
            let gx = a1.act_obj(g, x);
            let base = g.point().expect("pointed context").clone();
            let table: Vec<(Elem, Elem)> = gx
                .carrier()
                .iter()
                .map(|e| match e {
                    Elem::Pair(_, xv) => (e.clone(), Elem::pair(base.clone(), (**xv).clone())),
                    _ => unreachable!(),
                })
                .collect();
            Ok(Morphism::new(gx.clone(), gx, table))
        },
    )
}

/// str(γ,(x,x′)) = ((γ,x),(γ,x′)) for the squaring functor on a concrete
/// cartesian self-action.
pub fn square_strength(a: &LeftAction) -> Strength {
    let a1 = a.clone();
    let f = square_functor(&a.c);
    Strength::new(f, a.clone(), a.clone(), "square-canonical", move |g, x| {
        let fx = concrete_product(x, x).0;
        let dom = a1.act_obj(g, &fx);
        let gx = a1.act_obj(g, x);
        let cod = concrete_product(&gx, &gx).0;
        let table: Vec<(Elem, Elem)> = dom
            .carrier()
            .iter()
            .map(|e| match e {
                Elem::Pair(gv, p) => match &**p {
                    Elem::Pair(x1, x2) => (
                        e.clone(),
                        Elem::pair(
                            Elem::pair((**gv).clone(), (**x1).clone()),
                            Elem::pair((**gv).clone(), (**x2).clone()),
                        ),
                    ),
                    _ => unreachable!(),
                },
                _ => unreachable!(),
            })
            .collect();
        Ok(Morphism::new(dom, cod, table))
    })
}

/// str(γ, inl x) = inl(γ,x), str(γ, inr e) = inr e for the exception-shape
/// functor X ↦ X+E on a concrete cartesian self-action.
pub fn exc_strength(a: &LeftAction, e: &Obj) -> Strength {
    let a1 = a.clone();
    let e1 = e.clone();
    let f = exc_functor(&a.c, e);
    Strength::new(f, a.clone(), a.clone(), format!("exc-{}", e.id()), move |g, x| {
        let fx = concrete_coproduct(x, &e1).0;
        let dom = a1.act_obj(g, &fx);
        let gx = a1.act_obj(g, x);
        let cod = concrete_coproduct(&gx, &e1).0;
        let table: Vec<(Elem, Elem)> = dom
            .carrier()
            .iter()
            .map(|el| match el {
                Elem::Pair(gv, s) => match &**s {
                    Elem::Inl(xv) => (
                        el.clone(),
                        Elem::inl(Elem::pair((**gv).clone(), (**xv).clone())),
                    ),
                    Elem::Inr(ev) => (el.clone(), Elem::inr((**ev).clone())),
                    _ => unreachable!(),
                },
                _ => unreachable!(),
            })
            .collect();
        Ok(Morphism::new(dom, cod, table))
    })
}

/// The projection strength Γ▷E → E for the constant functor at E.
pub fn const_strength(a: &LeftAction, e: &Obj) -> Strength {
    let a1 = a.clone();
    let e1 = e.clone();
    let f = const_functor(&a.c, e);
    Strength::new(
        f,
        a.clone(),
        a.clone(),
        format!("const-{}", e.id()),
        move |g, _x| {
            let dom = a1.act_obj(g, &e1);
            let table: Vec<(Elem, Elem)> = dom
                .carrier()
                .iter()
                .map(|el| match el {
                    Elem::Pair(_, ev) => (el.clone(), (**ev).clone()),
                    _ => unreachable!(),
                })
                .collect();
            Ok(Morphism::new(dom, e1.clone(), table))
        },
    )
}

// ---------------------------------------------------------------------------
// named strong monads (in Kleisli form, over concrete cartesian self-actions)
// ---------------------------------------------------------------------------

/// The identity monad: TX = X, η = id, f* = f.
pub fn identity_strong_monad(a: &LeftAction) -> KleisliStrongMonad {
    let c = a.c.clone();
    KleisliStrongMonad::new(
        a.clone(),
        "identity",
        |x: &Obj| x.clone(),
        move |x: &Obj| c.identity(x),
        |_g: &Obj, _x: &Obj, _y: &Obj, f: &Morphism| Ok(f.clone()),
    )
}

/// The terminal monad: TX = 1, with the unique unit and extension.
pub fn terminal_strong_monad(a: &LeftAction, one: &Obj) -> KleisliStrongMonad {
    assert_eq!(one.carrier().len(), 1, "terminal object must be a singleton");
    let pt = one.carrier()[0].clone();
    let one1 = one.clone();
    let one2 = one.clone();
    let pt2 = pt.clone();
    let a1 = a.clone();
    let one3 = one.clone();
    KleisliStrongMonad::new(
        a.clone(),
        "terminal",
        move |_x: &Obj| one1.clone(),
        move |x: &Obj| {
            Morphism::new(
                x.clone(),
                one2.clone(),
                x.carrier().iter().map(|e| (e.clone(), pt2.clone())),
            )
        },
        move |g: &Obj, _x: &Obj, _y: &Obj, _f: &Morphism| {
            let dom = a1.act_obj(g, &one3);
            Ok(Morphism::new(
                dom.clone(),
                one3.clone(),
                dom.carrier().iter().map(|e| (e.clone(), pt.clone())),
            ))
        },
    )
}

/// The exception monad TX = X+E: η = inl, extension applies f on inl and
/// propagates the exception on inr.
pub fn exc_strong_monad(a: &LeftAction, e: &Obj) -> KleisliStrongMonad {
    let e1 = e.clone();
    let e2 = e.clone();
    let e3 = e.clone();
    let a1 = a.clone();
    KleisliStrongMonad::new(
        a.clone(),
        format!("exc-{}", e.id()),
        move |x: &Obj| concrete_coproduct(x, &e1).0,
        move |x: &Obj| concrete_coproduct(x, &e2).1,
        move |g: &Obj, x: &Obj, y: &Obj, f: &Morphism| {
            let tx = concrete_coproduct(x, &e3).0;
            let ty = concrete_coproduct(y, &e3).0;
            let dom = a1.act_obj(g, &tx);
            let table: Vec<(Elem, Elem)> = dom
                .carrier()
                .iter()
                .map(|el| match el {
                    Elem::Pair(gv, s) => match &**s {
                        Elem::Inl(xv) => (
                            el.clone(),
                            f.apply(&Elem::pair((**gv).clone(), (**xv).clone())),
                        ),
                        Elem::Inr(ev) => (el.clone(), Elem::inr((**ev).clone())),
                        _ => unreachable!(),
                    },
                    _ => unreachable!(),
                })
                .collect();
            Ok(Morphism::new(dom, ty, table))
        },
    )
}

/// The maybe monad TX = X+1 as the one-exception case.
pub fn maybe_strong_monad(a: &LeftAction) -> KleisliStrongMonad {
    exc_strong_monad(a, &finset_obj(1))
}

/// Which of the two writer strengths to build the monad with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WriterForm {
    /// str(γ,(x,m)) = ((γ,x),m)
    Canonical,
    /// str′(γ,(x,m)) = ((γ·m,x),m), reading the log into the context action
    Twisted,
}

/// The Z₂ writer target: the monoid elements with the trivial Z₂-action.
pub fn z2_writer_m_obj() -> Obj {
    let m = z2_monoid();
    let table = m
        .elems
        .iter()
        .flat_map(|x| {
            m.elems
                .iter()
                .map(move |mm| ((x.clone(), mm.clone()), x.clone()))
        })
        .collect::<Vec<_>>();
    Obj::new("M", m.elems.clone()).with_mact(MonoidAction { monoid: m, table })
}

/// The Z₂ writer monad TX = X×M on Z₂-sets, in either of its two strong
/// forms. The twisted form lets the logged element act on the context
/// before reading it; the two forms share unit and multiplication but have
/// different extensions.
pub fn writer_z2_monad(a: &LeftAction, form: WriterForm) -> KleisliStrongMonad {
    let m_obj = z2_writer_m_obj();
    let mon = z2_monoid();
    let m1 = m_obj.clone();
    let m2 = m_obj.clone();
    let m3 = m_obj.clone();
    let one = mon.unit.clone();
    let a1 = a.clone();
    let label = match form {
        WriterForm::Canonical => "writer-z2",
        WriterForm::Twisted => "writer-z2-twisted",
    };
    KleisliStrongMonad::new(
        a.clone(),
        label,
        move |x: &Obj| concrete_product(x, &m1).0,
        move |x: &Obj| {
            let tx = concrete_product(x, &m2).0;
            Morphism::new(
                x.clone(),
                tx,
                x.carrier()
                    .iter()
                    .map(|e| (e.clone(), Elem::pair(e.clone(), one.clone()))),
            )
        },
        move |g: &Obj, x: &Obj, y: &Obj, f: &Morphism| {
            let tx = concrete_product(x, &m3).0;
            let ty = concrete_product(y, &m3).0;
            let dom = a1.act_obj(g, &tx);
            let table: Vec<(Elem, Elem)> = dom
                .carrier()
                .iter()
                .map(|el| match el {
                    Elem::Pair(gv, p) => match &**p {
                        Elem::Pair(xv, mv) => {
                            let gamma = match form {
                                WriterForm::Canonical => (**gv).clone(),
                                WriterForm::Twisted => g
                                    .0
                                    .mact
                                    .as_ref()
                                    .expect("acted context")
                                    .act(gv, mv)
                                    .expect("monoid element")
                                    .clone(),
                            };
                            let out = f.apply(&Elem::pair(gamma, (**xv).clone()));
                            match &out {
                                Elem::Pair(yv, m2v) => (
                                    el.clone(),
                                    Elem::pair(
                                        (**yv).clone(),
                                        mon.mul(mv, m2v).expect("monoid element").clone(),
                                    ),
                                ),
                                _ => unreachable!(),
                            }
                        }
                        _ => unreachable!(),
                    },
                    _ => unreachable!(),
                })
                .collect();
            Ok(Morphism::new(dom, ty, table))
        },
    )
}

/// The strongly free algebra on X for the constant functor at E:
/// carrier X+E, structure inr, injection inl. Its monad is the exception
/// monad.
pub fn delta_free_candidate(x: &Obj, e: &Obj) -> StronglyFreeCandidate {
    let (a, i1, i2) = concrete_coproduct(x, e);
    StronglyFreeCandidate {
        base: x.clone(),
        algebra: FAlgebra {
            carrier: a,
            structure: i2,
        },
        inject: i1,
    }
}

// ---------------------------------------------------------------------------
// exponent objects and currying adjunctions
// ---------------------------------------------------------------------------

/// All total functions `g → y` as `Fun` elements (deterministic order).
fn all_funs(g: &Obj, y: &Obj) -> Vec<Elem> {
    let dom: Vec<Elem> = g.carrier().to_vec();
    if dom.is_empty() {
        return vec![Elem::fun(Vec::<(Elem, Elem)>::new())];
    }
    let mut out = vec![Vec::<(Elem, Elem)>::new()];
    for x in &dom {
        let mut next = Vec::new();
        for partial in &out {
            for v in y.carrier() {
                let mut t = partial.clone();
                t.push((x.clone(), v.clone()));
                next.push(t);
            }
        }
        out = next;
    }
    out.into_iter().map(Elem::fun).collect()
}

/// Plain function-space object: all maps `g → y`. This is the exponent for
/// finset, and also for bool2 (where it computes Heyting implication on the
/// window: the object is empty exactly when g is inhabited and y is not).
pub fn finset_exp(g: &Obj, y: &Obj) -> Obj {
    Obj::new(format!("({}⇒{})", g.id(), y.id()), all_funs(g, y))
}

/// Exponent of Z2-sets: all functions `g → y`, with Z2 acting by
/// conjugation, (F·h)(γ) = F(γ·h)·h (Z2 is a group, so h is its own
/// inverse and this is the usual twisted action).
pub fn z2_exp(g: &Obj, y: &Obj) -> Obj {
    let ga = g.0.mact.as_ref().expect("z2_exp: g carries an action");
    let ya = y.0.mact.as_ref().expect("z2_exp: y carries an action");
    assert_eq!(ga.monoid, ya.monoid, "z2_exp: mismatched monoids");
    let funs = all_funs(g, y);
    let mut table = Vec::new();
    for f in &funs {
        for h in &ga.monoid.elems {
            let moved = Elem::fun(g.carrier().iter().map(|x| {
                let xh = ga.act(x, h).expect("total action").clone();
                let fx = f.fun_apply(&xh).expect("total function");
                (x.clone(), ya.act(fx, h).expect("total action").clone())
            }));
            table.push(((f.clone(), h.clone()), moved));
        }
    }
    Obj::new(format!("({}⇒{})", g.id(), y.id()), funs).with_mact(MonoidAction {
        monoid: ga.monoid.clone(),
        table,
    })
}

/// Pointed function-space: basepoint-preserving maps `x → y`, pointed by
/// the constant-basepoint map. This is the internal hom for the smash
/// product on pointed sets.
pub fn finsetpt_exp(x: &Obj, y: &Obj) -> Obj {
    let px = x.point().expect("pointed").clone();
    let py = y.point().expect("pointed").clone();
    let funs: Vec<Elem> = all_funs(x, y)
        .into_iter()
        .filter(|f| f.fun_apply(&px) == Some(&py))
        .collect();
    let point = Elem::fun(x.carrier().iter().map(|e| (e.clone(), py.clone())));
    Obj::new(format!("({}⊸{})", x.id(), y.id()), funs).with_point(point)
}

/// Which side of the tensor/action pair carries the adjunction parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurryFamily {
    /// Parameter is the context: L_Γ X = Γ▷X, R_Γ Y = Γ⋔Y (powering).
    Power,
    /// Parameter is the carrier object: L_X Γ = Γ▷X, R_X Y = X⊸Y
    /// (enrichment of the acted category).
    Enrich,
    /// Self-action of a monoidal category: L_Γ Δ = Δ⊗Γ, R_Γ Y = Γ⊸Y
    /// (internal hom of the enriching category).
    TensorHom,
}

/// Currying adjunction for concrete actions whose acted elements are pairs
/// (cartesian products and smash products alike). `expf` supplies the
/// function-space object; transposes are computed pointwise, sending absent
/// pairs (e.g. smashed-away ones) through the basepoint.
pub fn curry_adjunction(
    a: &LeftAction,
    family: CurryFamily,
    expf: Rc<dyn Fn(&Obj, &Obj) -> Obj>,
) -> Adjunction {
    let (params, a_cat, b_cat) = match family {
        CurryFamily::Power => (a.v.base.clone(), a.c.clone(), a.c.clone()),
        CurryFamily::Enrich => (a.c.clone(), a.v.base.clone(), a.c.clone()),
        CurryFamily::TensorHom => (a.v.base.clone(), a.v.base.clone(), a.v.base.clone()),
    };
    // Under `Power` the parameter is the left (context) tensorand; under
    // `Enrich` it is the right one.
    let param_first = matches!(family, CurryFamily::Power);
    let act = a.clone();
    let left: Rc<dyn Fn(&Obj, &Obj) -> Obj> = {
        let act = act.clone();
        Rc::new(move |p, x| match family {
            CurryFamily::Power => act.act_obj(p, x),
            CurryFamily::Enrich | CurryFamily::TensorHom => act.act_obj(x, p),
        })
    };
    let left_mor: Rc<dyn Fn(&Obj, &Morphism) -> Morphism> = {
        let act = act.clone();
        Rc::new(move |p, u| match family {
            CurryFamily::Power => act.whisker_r(p, u),
            CurryFamily::Enrich | CurryFamily::TensorHom => act.whisker_l(u, p),
        })
    };
    let left_pmor: Rc<dyn Fn(&Morphism, &Obj) -> Morphism> = {
        let act = act.clone();
        Rc::new(move |sigma, x| match family {
            CurryFamily::Power => act.whisker_l(sigma, x),
            CurryFamily::Enrich | CurryFamily::TensorHom => act.whisker_r(x, sigma),
        })
    };
    let right: Rc<dyn Fn(&Obj, &Obj) -> Obj> = expf.clone();
    let right_mor: Rc<dyn Fn(&Obj, &Morphism) -> Morphism> = {
        let expf = expf.clone();
        Rc::new(move |p, w| {
            let dom = expf(p, &w.dom);
            let cod = expf(p, &w.cod);
            Morphism::new(
                dom.clone(),
                cod,
                dom.carrier().iter().map(|f| {
                    (
                        f.clone(),
                        Elem::fun(p.carrier().iter().map(|pe| {
                            (pe.clone(), w.apply(f.fun_apply(pe).expect("total")).clone())
                        })),
                    )
                }),
            )
        })
    };
    let right_pmor: Rc<dyn Fn(&Morphism, &Obj) -> Morphism> = {
        let expf = expf.clone();
        Rc::new(move |sigma, b| {
            let dom = expf(&sigma.cod, b);
            let cod = expf(&sigma.dom, b);
            Morphism::new(
                dom.clone(),
                cod,
                dom.carrier().iter().map(|f| {
                    (
                        f.clone(),
                        Elem::fun(sigma.dom.carrier().iter().map(|pe| {
                            (pe.clone(), f.fun_apply(&sigma.apply(pe)).expect("total").clone())
                        })),
                    )
                }),
            )
        })
    };
    let pair_of = move |pe: &Elem, ae: &Elem| -> Elem {
        if param_first {
            Elem::pair(pe.clone(), ae.clone())
        } else {
            Elem::pair(ae.clone(), pe.clone())
        }
    };
    let fwd: Rc<dyn Fn(&Obj, &Obj, &Obj, &Morphism) -> Result<Morphism>> = {
        let expf = expf.clone();
        Rc::new(move |p, a, b, f| {
            Ok(Morphism::new(
                a.clone(),
                expf(p, b),
                a.carrier().iter().map(|ae| {
                    (
                        ae.clone(),
                        Elem::fun(p.carrier().iter().map(|pe| {
                            let e = pair_of(pe, ae);
                            let key = if f.dom.carrier().contains(&e) {
                                e
                            } else {
                                f.dom
                                    .point()
                                    .expect("element outside a pointed tensor carrier")
                                    .clone()
                            };
                            (pe.clone(), f.apply(&key).clone())
                        })),
                    )
                }),
            ))
        })
    };
    let bwd: Rc<dyn Fn(&Obj, &Obj, &Obj, &Morphism) -> Result<Morphism>> = {
        let left = left.clone();
        Rc::new(move |p, a, b, g| {
            let dom = left(p, a);
            let mut table = BTreeMap::new();
            for e in dom.carrier() {
                let Elem::Pair(u, v) = e else {
                    return Err(LabError::Other(format!(
                        "curry_adjunction: tensor element {e} is not a pair"
                    )));
                };
                let (pe, ae) = if param_first { (u, v) } else { (v, u) };
                let fa = g.try_apply(ae).ok_or_else(|| {
                    LabError::Other("curry_adjunction: transpose input not total".into())
                })?;
                let out = fa.fun_apply(pe).ok_or_else(|| {
                    LabError::Other("curry_adjunction: transpose value is not a function element".into())
                })?;
                table.insert(e.clone(), out.clone());
            }
            Ok(Morphism::new(dom, b.clone(), table))
        })
    };
    Adjunction::new(
        format!("curry-{}-{:?}", a.c.name, family),
        params,
        a_cat,
        b_cat,
        {
            let left = left.clone();
            move |p: &Obj, x: &Obj| left(p, x)
        },
        {
            let left_mor = left_mor.clone();
            move |p: &Obj, u: &Morphism| left_mor(p, u)
        },
        {
            let left_pmor = left_pmor.clone();
            move |s: &Morphism, x: &Obj| left_pmor(s, x)
        },
        {
            let right = right.clone();
            move |p: &Obj, y: &Obj| right(p, y)
        },
        {
            let right_mor = right_mor.clone();
            move |p: &Obj, w: &Morphism| right_mor(p, w)
        },
        {
            let right_pmor = right_pmor.clone();
            move |s: &Morphism, y: &Obj| right_pmor(s, y)
        },
        {
            let fwd = fwd.clone();
            move |p: &Obj, a: &Obj, b: &Obj, f: &Morphism| fwd(p, a, b, f)
        },
        {
            let bwd = bwd.clone();
            move |p: &Obj, a: &Obj, b: &Obj, g: &Morphism| bwd(p, a, b, g)
        },
    )
}

/// Exponent chooser matching a named corpus category.
pub fn exp_for(cat_name: &str) -> Rc<dyn Fn(&Obj, &Obj) -> Obj> {
    match cat_name {
        "finset" | "bool2" => Rc::new(finset_exp),
        "finsetpt" => Rc::new(finsetpt_exp),
        "z2act" => Rc::new(z2_exp),
        other => panic!("no exponent builder for category {other}"),
    }
}

// ---------------------------------------------------------------------------
// klexc: the Kleisli category of −+E with its coCartesian structure
// ---------------------------------------------------------------------------

/// The coproduct chooser for a Kleisli category over finset-style base
/// coproducts: the coproduct object is inherited from the base and the
/// injections are η∘inl and η∘inr; copairing is by cases on the carrier.
pub fn kleisli_cochooser(md: &MonadData) -> CoproductChooser {
    let base = md.functor.source.clone();
    let md1 = md.clone();
    let initial = finset_obj(0);
    let init2 = initial.clone();
    CoproductChooser {
        initial,
        coproduct: Rc::new(move |a: &Obj, b: &Obj| {
            let (s, i1, i2) = concrete_coproduct(a, b);
            let eta = md1.unit.at(&s);
            let j1 = base
                .compose(&eta, &i1)
                .expect("compose")
                .retag(a.clone(), s.clone());
            let j2 = base
                .compose(&eta, &i2)
                .expect("compose")
                .retag(b.clone(), s.clone());
            (s, j1, j2)
        }),
        copair: Rc::new(|f: &Morphism, g: &Morphism| {
            let dom = concrete_coproduct(&f.dom, &g.dom).0;
            Morphism::new(
                dom.clone(),
                f.cod.clone(),
                dom.carrier().iter().map(|el| {
                    let v = match el {
                        Elem::Inl(x) => f.apply(x),
                        Elem::Inr(y) => g.apply(y),
                        _ => unreachable!(),
                    };
                    (el.clone(), v)
                }),
            )
        }),
        cobang: Rc::new(move |z: &Obj| {
            Morphism::new(init2.clone(), z.clone(), std::iter::empty::<(Elem, Elem)>())
        }),
    }
}

/// The Kleisli category of X ↦ X+E on finset (probe sizes [0,1,2]), with
/// its coCartesian monoidal structure (𝟘, +). Morphisms X → Y are tables
/// X → Y+E; identities are η; composition propagates errors.
pub fn klexc(e_size: usize, bounds: Bounds) -> Result<(Category, MonoidalStructure)> {
    if e_size > 3 {
        return Err(LabError::ParamOutOfBounds(format!(
            "klexc error set size {e_size} > 3"
        )));
    }
    let base = finset(bounds);
    let act = self_action(&finset_cartesian(&base)?);
    let m = exc_strong_monad(&act, &finset_obj(e_size));
    let md = underlying_monad(&m);
    let kl = kleisli_category(&md);
    let mon = cocartesian_monoidal(&kl, &kleisli_cochooser(&md))?;
    Ok((kl, mon))
}

/// The WFC structure Φ^e on the klexc self-action: every context has the
/// single point ⟨⟩ out of 𝟘, and Φ^e_Γ ζ = [inr∘e∘!, ζ⟨⟩] sends the
/// context summand to the error e and the value summand through ζ⟨⟩.
pub fn klexc_wfc(a: &LeftAction, e_idx: usize) -> WFCStructure {
    let a2 = a.clone();
    let err = Elem::inr(Elem::atom(e_idx.to_string()));
    WFCStructure::new(
        a.clone(),
        format!("phi-e{e_idx}"),
        move |zeta: &PointFamily| {
            let (_, v) = zeta
                .table
                .first()
                .ok_or_else(|| LabError::Other("context has no points".into()))?;
            let dom = a2.act_obj(&zeta.context, &zeta.x);
            let table: Vec<(Elem, Elem)> = dom
                .carrier()
                .iter()
                .map(|el| match el {
                    Elem::Inl(_) => (el.clone(), err.clone()),
                    Elem::Inr(x) => (el.clone(), v.apply(x)),
                    _ => unreachable!(),
                })
                .collect();
            Ok(Morphism::new(dom, zeta.y.clone(), table))
        },
    )
}

// ---------------------------------------------------------------------------
// instance registry plumbing
// ---------------------------------------------------------------------------

/// Parameters for a named builtin instance.
#[derive(Debug, Clone, Default)]
pub struct InstanceSpec {
    pub name: String,
    pub params: BTreeMap<String, String>,
}

impl InstanceSpec {
    pub fn named(name: &str) -> InstanceSpec {
        InstanceSpec {
            name: name.to_string(),
            params: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: &str) -> InstanceSpec {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    /// Parse "name" or "name,k=v,k=v" into a spec.
    pub fn parse(text: &str) -> Result<InstanceSpec> {
        let mut parts = text.split(',');
        let name = parts
            .next()
            .filter(|n| !n.is_empty())
            .ok_or_else(|| LabError::UnknownInstance(text.to_string()))?;
        let mut spec = InstanceSpec::named(name.trim());
        for p in parts {
            let (k, v) = p
                .split_once('=')
                .ok_or_else(|| LabError::ParamOutOfBounds(format!("malformed param `{p}`")))?;
            spec.params.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(spec)
    }

    fn usize_param(&self, key: &str, default: usize, max: usize) -> Result<usize> {
        let v = match self.params.get(key) {
            None => default,
            Some(s) => s
                .parse::<usize>()
                .map_err(|_| LabError::ParamOutOfBounds(format!("{key}={s} is not a size")))?,
        };
        if v > max {
            return Err(LabError::ParamOutOfBounds(format!("{key}={v} > {max}")));
        }
        Ok(v)
    }
}

/// A built corpus instance: the category with its monoidal structure and
/// self-action, plus the monads, functors, strengths, and WFC structures
/// registered for it.
pub struct InstanceBundle {
    pub spec: InstanceSpec,
    pub category: Category,
    pub monoidal: MonoidalStructure,
    pub action: LeftAction,
    pub monads: BTreeMap<String, KleisliStrongMonad>,
    pub functors: BTreeMap<String, FunctorData>,
    pub strengths: BTreeMap<String, Strength>,
    pub wfcs: BTreeMap<String, WFCStructure>,
}

impl InstanceBundle {
    pub fn monad(&self, name: &str) -> Result<&KleisliStrongMonad> {
        self.monads
            .get(name)
            .ok_or_else(|| LabError::UnknownInstance(format!("monad {name}")))
    }
    pub fn functor(&self, name: &str) -> Result<&FunctorData> {
        self.functors
            .get(name)
            .ok_or_else(|| LabError::UnknownInstance(format!("functor {name}")))
    }
    pub fn strength(&self, name: &str) -> Result<&Strength> {
        self.strengths
            .get(name)
            .ok_or_else(|| LabError::UnknownInstance(format!("strength {name}")))
    }
}

/// The WFC structure Φ_Γ ζ = ζ(⋆)∘(second projection) on the Cartesian
/// self-action of pointed sets: every context has the single basepoint
/// point, and Φ ignores the context component.
pub fn star_wfc(a: &LeftAction) -> WFCStructure {
    let a2 = a.clone();
    WFCStructure::new(a.clone(), "star", move |zeta: &PointFamily| {
        let gx = a2.act_obj(&zeta.context, &zeta.x);
        let (_, v) = zeta
            .table
            .first()
            .ok_or_else(|| LabError::Other("context has no points".into()))?;
        let table: Vec<(Elem, Elem)> = gx
            .carrier()
            .iter()
            .map(|e| match e {
                Elem::Pair(_, x) => (e.clone(), v.apply(x)),
                _ => unreachable!(),
            })
            .collect();
        Ok(Morphism::new(gx, zeta.y.clone(), table))
    })
}

/// Build a named builtin instance with its registered structures.
pub fn build(spec: &InstanceSpec) -> Result<InstanceBundle> {
    let bounds = Bounds::from_env();
    // aliases for the finsetpt variants
    let (name, mut params) = match spec.name.as_str() {
        "finsetpt-cartesian" => ("finsetpt", spec.params.clone()),
        "finsetpt-smash" => {
            let mut p = spec.params.clone();
            p.insert("monoidal".into(), "smash".into());
            ("finsetpt", p)
        }
        other => (other, spec.params.clone()),
    };
    let norm = InstanceSpec {
        name: name.to_string(),
        params: params.clone(),
    };
    params.clear();

    let mut monads: BTreeMap<String, KleisliStrongMonad> = BTreeMap::new();
    let mut functors: BTreeMap<String, FunctorData> = BTreeMap::new();
    let mut strengths: BTreeMap<String, Strength> = BTreeMap::new();
    let mut wfcs: BTreeMap<String, WFCStructure> = BTreeMap::new();

    let (category, monoidal) = match name {
        "finset" => {
            let sizes = match norm.params.get("probe") {
                None => vec![0, 1, 2],
                Some(s) => {
                    let mut sizes = Vec::new();
                    for part in s.split(|c| c == '+' || c == ' ').filter(|p| !p.is_empty()) {
                        sizes.push(part.parse::<usize>().map_err(|_| {
                            LabError::ParamOutOfBounds(format!("probe size `{part}`"))
                        })?);
                    }
                    if sizes.len() > 4 || sizes.iter().any(|&n| n > 4) {
                        return Err(LabError::ParamOutOfBounds(format!("probe {s}")));
                    }
                    sizes
                }
            };
            let c = finset_sized(&sizes, bounds);
            let m = finset_cartesian(&c)?;
            (c, m)
        }
        "bool2" => {
            let c = bool2(bounds);
            let m = bool2_meet(&c)?;
            (c, m)
        }
        "finsetpt" => {
            let mut c = finsetpt(bounds);
            // the three-element probe object makes exhaustive law sweeps
            // needlessly large; the window [P1, P2] already separates all
            // documented verdicts
            c.probe.truncate(2);
            let m = match norm.params.get("monoidal").map(|s| s.as_str()) {
                None | Some("cartesian") => finsetpt_cartesian(&c)?,
                Some("smash") => finsetpt_smash(&c)?,
                Some(other) => {
                    return Err(LabError::ParamOutOfBounds(format!("monoidal={other}")))
                }
            };
            (c, m)
        }
        "finpos" => {
            let c = finpos(bounds);
            let m = finpos_cartesian(&c)?;
            (c, m)
        }
        "z2act" => {
            let c = z2act(bounds);
            let m = z2act_cartesian(&c)?;
            (c, m)
        }
        "klexc" => {
            let e = norm.usize_param("E", 2, 3)?;
            klexc(e, bounds)?
        }
        other => return Err(LabError::UnknownInstance(other.to_string())),
    };

    let action = self_action(&monoidal);
    let idf = FunctorData::identity(&category);
    functors.insert("id".into(), idf.clone());
    strengths.insert("id".into(), crate::strength::identity_strength(&action));
    monads.insert("identity".into(), identity_strong_monad(&action));

    match name {
        "finset" | "bool2" => {
            let one = finset_obj(1);
            monads.insert("terminal".into(), terminal_strong_monad(&action, &one));
            functors.insert("square".into(), square_functor(&category));
            strengths.insert("square".into(), square_strength(&action));
            if name == "finset" {
                let e = norm.usize_param("E", 2, 3)?;
                let eobj = finset_obj(e);
                monads.insert("exc".into(), exc_strong_monad(&action, &eobj));
                monads.insert("maybe".into(), maybe_strong_monad(&action));
                functors.insert("exc".into(), exc_functor(&category, &eobj));
                strengths.insert("exc".into(), exc_strength(&action, &eobj));
                functors.insert("const".into(), const_functor(&category, &eobj));
                strengths.insert("const".into(), const_strength(&action, &eobj));
                functors.insert("disc".into(), disc_functor(&category));
            }
        }
        "finsetpt" => {
            if norm.params.get("monoidal").map(|s| s.as_str()) != Some("smash") {
                let one = finsetpt_obj(0);
                monads.insert("terminal".into(), terminal_strong_monad(&action, &one));
                strengths.insert("star".into(), star_strength(&action));
                wfcs.insert("star".into(), star_wfc(&action));
            }
        }
        "finpos" => {
            let one = chain_obj(1);
            monads.insert("terminal".into(), terminal_strong_monad(&action, &one));
            functors.insert("disc".into(), disc_functor(&category));
            functors.insert("square".into(), square_functor(&category));
            strengths.insert("square".into(), square_strength(&action));
        }
        "z2act" => {
            let one = z2_trivial_obj(1, "T1");
            monads.insert("terminal".into(), terminal_strong_monad(&action, &one));
            monads.insert(
                "writer".into(),
                writer_z2_monad(&action, WriterForm::Canonical),
            );
            monads.insert(
                "writer-twisted".into(),
                writer_z2_monad(&action, WriterForm::Twisted),
            );
        }
        "klexc" => {
            let e = norm.usize_param("E", 2, 3)?;
            for i in 0..e {
                wfcs.insert(format!("phi-e{i}"), klexc_wfc(&action, i));
            }
        }
        _ => {}
    }

    Ok(InstanceBundle {
        spec: norm,
        category,
        monoidal,
        action,
        monads,
        functors,
        strengths,
        wfcs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoidal::validate_monoidal;

    #[test]
    fn finset_cartesian_validates() {
        let b = Bounds::default();
        let c = finset(b);
        let m = finset_cartesian(&c).unwrap();
        let rep = validate_monoidal(&m).unwrap();
        assert!(rep.pass(), "{}", rep.summary());
    }

    #[test]
    fn finset_cocartesian_validates() {
        let b = Bounds::default();
        let c = finset(b);
        let m = finset_cocartesian(&c).unwrap();
        let rep = validate_monoidal(&m).unwrap();
        assert!(rep.pass(), "{}", rep.summary());
    }

    #[test]
    fn finsetpt_smash_validates() {
        let b = Bounds::default();
        let c = finsetpt(b);
        let m = finsetpt_smash(&c).unwrap();
        let rep = validate_monoidal(&m).unwrap();
        assert!(rep.pass(), "{}", rep.summary());
    }

    #[test]
    fn finsetpt_cartesian_validates() {
        let b = Bounds::default();
        let c = finsetpt(b);
        let m = finsetpt_cartesian(&c).unwrap();
        let rep = validate_monoidal(&m).unwrap();
        assert!(rep.pass(), "{}", rep.summary());
    }

    #[test]
    fn finpos_cartesian_validates() {
        let b = Bounds::default();
        let c = finpos(b);
        let m = finpos_cartesian(&c).unwrap();
        let rep = validate_monoidal(&m).unwrap();
        assert!(rep.pass(), "{}", rep.summary());
    }

    #[test]
    fn z2act_cartesian_validates() {
        let b = Bounds::default();
        let c = z2act(b);
        let m = z2act_cartesian(&c).unwrap();
        let rep = validate_monoidal(&m).unwrap();
        assert!(rep.pass(), "{}", rep.summary());
    }

    #[test]
    fn bool2_meet_and_join_validate() {
        let b = Bounds::default();
        let c = bool2(b);
        assert!(validate_monoidal(&bool2_meet(&c).unwrap()).unwrap().pass());
        assert!(validate_monoidal(&bool2_join(&c).unwrap()).unwrap().pass());
    }

    #[test]
    fn mutant_lambda_fails_triangle() {
        let b = Bounds::default();
        let c = finset(b);
        let m = finset_cartesian(&c).unwrap();
        // replace λ with a constant-collapsing table where possible
        let m2 = m.clone();
        let base = c.clone();
        let mutant = MonoidalStructure::new(
            c.clone(),
            m.unit.clone(),
            m.tensor.clone(),
            move |g: &Obj| {
                let good = m2.lam(g);
                match g.carrier().first() {
                    Some(first) if g.carrier().len() > 1 => Morphism::new(
                        good.dom.clone(),
                        good.cod.clone(),
                        good.table.keys().map(|k| (k.clone(), first.clone())),
                    ),
                    _ => good,
                }
            },
            {
                let m3 = m.clone();
                move |g: &Obj| m3.rho(g)
            },
            {
                let m4 = m.clone();
                move |a: &Obj, b2: &Obj, d: &Obj| m4.assoc(a, b2, d)
            },
            None,
        );
        let _ = &base;
        let rep = validate_monoidal(&mutant).unwrap();
        assert!(!rep.pass());
        assert!(rep
            .failures
            .iter()
            .any(|f| f.law == "triangle" || f.law == "lambda-iso" || f.law == "lambda-natural"));
    }

    #[test]
    fn random_categories_are_valid_and_deterministic() {
        for seed in 1..=10 {
            let c1 = random_category(seed, 3, 3);
            let c2 = random_category(seed, 3, 3);
            match (c1, c2) {
                (Ok(a), Ok(b)) => {
                    assert!(validate_category(&a).unwrap().pass());
                    for (x, y) in a.probe.iter().zip(b.probe.iter()) {
                        assert_eq!(x, y);
                    }
                }
                (Err(LabError::GenerationFailed), Err(LabError::GenerationFailed)) => {}
                other => panic!("nondeterministic generation: {other:?}"),
            }
        }
    }
}
