//! Concrete objects, morphisms-as-tables, computable categories, functors,
//! natural transformations, and the exhaustive law checkers they share.

use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;

use crate::bounds::Bounds;
use crate::error::{LabError, Result};

/// An element of a finite carrier. Structured so that derived objects
/// (products, sums, function spaces) have self-describing elements.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Elem {
    Atom(String),
    Pair(Box<Elem>, Box<Elem>),
    Inl(Box<Elem>),
    Inr(Box<Elem>),
    /// A function table, used as an element of exponent / hom objects.
    Fun(Vec<(Elem, Elem)>),
}

impl Elem {
    pub fn atom(s: impl Into<String>) -> Elem {
        Elem::Atom(s.into())
    }
    pub fn pair(a: Elem, b: Elem) -> Elem {
        Elem::Pair(Box::new(a), Box::new(b))
    }
    pub fn inl(a: Elem) -> Elem {
        Elem::Inl(Box::new(a))
    }
    pub fn inr(a: Elem) -> Elem {
        Elem::Inr(Box::new(a))
    }
    pub fn fun(table: impl IntoIterator<Item = (Elem, Elem)>) -> Elem {
        let mut t: Vec<(Elem, Elem)> = table.into_iter().collect();
        t.sort();
        Elem::Fun(t)
    }
    /// Apply a `Fun` element to an argument.
    pub fn fun_apply(&self, arg: &Elem) -> Option<&Elem> {
        match self {
            Elem::Fun(t) => t.iter().find(|(k, _)| k == arg).map(|(_, v)| v),
            _ => None,
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Atom(s) => write!(f, "{s}"),
            Elem::Pair(a, b) => write!(f, "({a},{b})"),
            Elem::Inl(a) => write!(f, "inl({a})"),
            Elem::Inr(a) => write!(f, "inr({a})"),
            Elem::Fun(t) => {
                write!(f, "{{")?;
                for (i, (k, v)) in t.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{k}->{v}")?;
                }
                write!(f, "}}")
            }
        }
    }
}

/// A finite monoid given by tables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonoidTable {
    pub elems: Vec<Elem>,
    pub unit: Elem,
    pub mul: Vec<((Elem, Elem), Elem)>,
}

impl MonoidTable {
    pub fn mul(&self, a: &Elem, b: &Elem) -> Option<&Elem> {
        self.mul
            .iter()
            .find(|((x, y), _)| x == a && y == b)
            .map(|(_, v)| v)
    }
    pub fn is_valid(&self) -> bool {
        if !self.elems.contains(&self.unit) {
            return false;
        }
        for a in &self.elems {
            for b in &self.elems {
                let Some(ab) = self.mul(a, b) else {
                    return false;
                };
                if !self.elems.contains(ab) {
                    return false;
                }
            }
            if self.mul(&self.unit, a) != Some(a) || self.mul(a, &self.unit) != Some(a) {
                return false;
            }
        }
        for a in &self.elems {
            for b in &self.elems {
                for c in &self.elems {
                    let ab_c = self.mul(self.mul(a, b).unwrap(), c);
                    let a_bc = self.mul(a, self.mul(b, c).unwrap());
                    if ab_c != a_bc {
                        return false;
                    }
                }
            }
        }
        true
    }
    pub fn is_commutative(&self) -> bool {
        self.elems
            .iter()
            .flat_map(|a| self.elems.iter().map(move |b| (a, b)))
            .all(|(a, b)| self.mul(a, b) == self.mul(b, a))
    }
}

/// A right monoid action decoration: carrier × monoid → carrier.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonoidAction {
    pub monoid: MonoidTable,
    pub table: Vec<((Elem, Elem), Elem)>,
}

impl MonoidAction {
    pub fn act(&self, x: &Elem, m: &Elem) -> Option<&Elem> {
        self.table
            .iter()
            .find(|((a, b), _)| a == x && b == m)
            .map(|(_, v)| v)
    }
}

#[derive(Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjData {
    pub id: String,
    pub carrier: Vec<Elem>,
    pub point: Option<Elem>,
    /// Full order relation (including reflexive pairs), when present.
    pub order: Option<Vec<(Elem, Elem)>>,
    pub mact: Option<MonoidAction>,
    /// Component objects, for product-category objects.
    pub parts: Option<(Obj, Obj)>,
    /// Free-form payload for derived categories (e.g. algebra structure keys).
    pub payload: Option<String>,
}

/// A concrete object: a finite carrier with optional decorations.
/// Cheap to clone; compared structurally.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Obj(pub Rc<ObjData>);

impl fmt::Debug for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Obj({})", self.0.id)
    }
}

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.id)
    }
}

impl Obj {
    pub fn new(id: impl Into<String>, carrier: Vec<Elem>) -> Obj {
        Obj(Rc::new(ObjData {
            id: id.into(),
            carrier,
            point: None,
            order: None,
            mact: None,
            parts: None,
            payload: None,
        }))
    }
    pub fn with_point(self, p: Elem) -> Obj {
        let mut d = self.into_data();
        d.point = Some(p);
        Obj(Rc::new(d))
    }
    pub fn with_order(self, order: Vec<(Elem, Elem)>) -> Obj {
        let mut d = self.into_data();
        let mut o = order;
        o.sort();
        o.dedup();
        d.order = Some(o);
        Obj(Rc::new(d))
    }
    pub fn with_mact(self, a: MonoidAction) -> Obj {
        let mut d = self.into_data();
        d.mact = Some(a);
        Obj(Rc::new(d))
    }
    pub fn with_parts(self, l: Obj, r: Obj) -> Obj {
        let mut d = self.into_data();
        d.parts = Some((l, r));
        Obj(Rc::new(d))
    }
    pub fn with_payload(self, p: impl Into<String>) -> Obj {
        let mut d = self.into_data();
        d.payload = Some(p.into());
        Obj(Rc::new(d))
    }

    fn into_data(self) -> ObjData {
        match Rc::try_unwrap(self.0) {
            Ok(d) => d,
            Err(rc) => ObjData {
                id: rc.id.clone(),
                carrier: rc.carrier.clone(),
                point: rc.point.clone(),
                order: rc.order.clone(),
                mact: rc.mact.clone(),
                parts: rc.parts.clone(),
                payload: rc.payload.clone(),
            },
        }
    }

    pub fn id(&self) -> &str {
        &self.0.id
    }
    pub fn carrier(&self) -> &[Elem] {
        &self.0.carrier
    }
    pub fn point(&self) -> Option<&Elem> {
        self.0.point.as_ref()
    }
    pub fn parts(&self) -> Option<(&Obj, &Obj)> {
        self.0.parts.as_ref().map(|(a, b)| (a, b))
    }
    pub fn leq(&self, a: &Elem, b: &Elem) -> bool {
        match &self.0.order {
            Some(o) => o.iter().any(|(x, y)| x == a && y == b),
            None => true,
        }
    }
    /// Check the object's internal invariants.
    pub fn well_formed(&self) -> Result<()> {
        let d = &self.0;
        let mut seen = d.carrier.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != d.carrier.len() {
            return Err(LabError::Other(format!("duplicate elements in {}", d.id)));
        }
        if let Some(p) = &d.point {
            if !d.carrier.contains(p) {
                return Err(LabError::Other(format!("point outside carrier in {}", d.id)));
            }
        }
        if let Some(o) = &d.order {
            for x in &d.carrier {
                if !o.contains(&(x.clone(), x.clone())) {
                    return Err(LabError::Other(format!("order not reflexive in {}", d.id)));
                }
            }
            for (x, y) in o {
                if !d.carrier.contains(x) || !d.carrier.contains(y) {
                    return Err(LabError::Other(format!("order outside carrier in {}", d.id)));
                }
                if x != y && o.contains(&(y.clone(), x.clone())) {
                    return Err(LabError::Other(format!("order not antisymmetric in {}", d.id)));
                }
                for (y2, z) in o {
                    if y2 == y && !o.contains(&(x.clone(), z.clone())) {
                        return Err(LabError::Other(format!("order not transitive in {}", d.id)));
                    }
                }
            }
        }
        if let Some(a) = &d.mact {
            if !a.monoid.is_valid() {
                return Err(LabError::Other(format!("invalid monoid in {}", d.id)));
            }
            for x in &d.carrier {
                let Some(xu) = a.act(x, &a.monoid.unit) else {
                    return Err(LabError::Other(format!("action table partial in {}", d.id)));
                };
                if xu != x {
                    return Err(LabError::Other(format!("action unit law fails in {}", d.id)));
                }
                for m in &a.monoid.elems {
                    let Some(xm) = a.act(x, m) else {
                        return Err(LabError::Other(format!("action table partial in {}", d.id)));
                    };
                    if !d.carrier.contains(xm) {
                        return Err(LabError::Other(format!("action leaves carrier in {}", d.id)));
                    }
                    for n in &a.monoid.elems {
                        let lhs = a.act(xm, n);
                        let rhs = a.act(x, a.monoid.mul(m, n).unwrap());
                        if lhs != rhs {
                            return Err(LabError::Other(format!(
                                "action associativity fails in {}",
                                d.id
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// A morphism: categorical endpoints plus an element table. For derived
/// categories (opposite, Kleisli) the table is the underlying payload and
/// need not land in the categorical codomain's carrier.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub dom: Obj,
    pub cod: Obj,
    pub table: BTreeMap<Elem, Elem>,
}

impl PartialOrd for Morphism {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

// Canonical order: lexicographic on (dom id, cod id, table).
impl Ord for Morphism {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.dom.id(), self.cod.id(), &self.table, &self.dom, &self.cod).cmp(&(
            other.dom.id(),
            other.cod.id(),
            &other.table,
            &other.dom,
            &other.cod,
        ))
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} [", self.dom.id(), self.cod.id())?;
        for (i, (k, v)) in self.table.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{k}->{v}")?;
        }
        write!(f, "]")
    }
}

impl Morphism {
    pub fn new(dom: Obj, cod: Obj, table: impl IntoIterator<Item = (Elem, Elem)>) -> Morphism {
        Morphism {
            dom,
            cod,
            table: table.into_iter().collect(),
        }
    }
    /// The identity function table on an object.
    pub fn identity(x: &Obj) -> Morphism {
        Morphism {
            dom: x.clone(),
            cod: x.clone(),
            table: x.carrier().iter().map(|e| (e.clone(), e.clone())).collect(),
        }
    }
    pub fn apply(&self, e: &Elem) -> Elem {
        self.table
            .get(e)
            .unwrap_or_else(|| panic!("morphism {} not defined at {}", self, e))
            .clone()
    }
    pub fn try_apply(&self, e: &Elem) -> Option<&Elem> {
        self.table.get(e)
    }
    /// Plain table composition `self ∘ other` (apply `other` first).
    pub fn after_table(&self, other: &Morphism) -> Morphism {
        Morphism {
            dom: other.dom.clone(),
            cod: self.cod.clone(),
            table: other
                .table
                .iter()
                .map(|(k, v)| (k.clone(), self.apply(v)))
                .collect(),
        }
    }
    /// Retag endpoints without touching the table.
    pub fn retag(&self, dom: Obj, cod: Obj) -> Morphism {
        Morphism {
            dom,
            cod,
            table: self.table.clone(),
        }
    }
    /// True when the table is a bijection between the endpoint carriers.
    pub fn is_table_bijection(&self) -> bool {
        if self.table.len() != self.dom.carrier().len()
            || self.table.len() != self.cod.carrier().len()
        {
            return false;
        }
        let mut vals: Vec<&Elem> = self.table.values().collect();
        vals.sort();
        vals.dedup();
        vals.len() == self.table.len()
    }
    /// Invert a bijective table (same endpoints swapped).
    pub fn table_inverse(&self) -> Option<Morphism> {
        if !self.is_table_bijection() {
            return None;
        }
        Some(Morphism {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            table: self.table.iter().map(|(k, v)| (v.clone(), k.clone())).collect(),
        })
    }
}

/// Enumerate all total function tables from `dom` to `cod` carriers, in
/// canonical (lexicographic) order, respecting the hom cap.
pub fn all_tables(dom: &[Elem], cod: &[Elem], cap: u64) -> Result<Vec<BTreeMap<Elem, Elem>>> {
    let n = dom.len();
    let m = cod.len();
    let size = if n == 0 {
        1u64
    } else if m == 0 {
        0u64
    } else {
        (m as u64)
            .checked_pow(n as u32)
            .unwrap_or(u64::MAX)
    };
    if size > cap {
        return Err(LabError::HomBoundExceeded {
            dom: format!("[{n} elems]"),
            cod: format!("[{m} elems]"),
            size,
            cap,
        });
    }
    if n > 0 && m == 0 {
        return Ok(vec![]);
    }
    let mut dom_sorted: Vec<Elem> = dom.to_vec();
    dom_sorted.sort();
    let mut cod_sorted: Vec<Elem> = cod.to_vec();
    cod_sorted.sort();
    let mut out = Vec::with_capacity(size as usize);
    let mut idx = vec![0usize; n];
    loop {
        out.push(
            dom_sorted
                .iter()
                .cloned()
                .zip(idx.iter().map(|&i| cod_sorted[i].clone()))
                .collect::<BTreeMap<_, _>>(),
        );
        // odometer, last position fastest
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < m {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Does `f`'s table preserve every decoration shared by its endpoints?
pub fn preserves_decorations(f: &Morphism) -> bool {
    let d = &f.dom;
    let c = &f.cod;
    if let (Some(pd), Some(pc)) = (d.point(), c.point()) {
        if f.try_apply(pd) != Some(pc) {
            return false;
        }
    }
    if let (Some(od), Some(_oc)) = (&d.0.order, &c.0.order) {
        for (x, y) in od {
            if !c.leq(&f.apply(x), &f.apply(y)) {
                return false;
            }
        }
    }
    if let (Some(ad), Some(ac)) = (&d.0.mact, &c.0.mact) {
        if ad.monoid != ac.monoid {
            return false;
        }
        for x in d.carrier() {
            for m in &ad.monoid.elems {
                let lhs = ac.act(&f.apply(x), m).cloned();
                let rhs = ad.act(x, m).map(|xm| f.apply(xm));
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// Enumerate the decoration-preserving morphisms `dom → cod` whose tables
/// extend `pinned`. Monoid-action orbits are propagated eagerly so that the
/// search branches only on genuinely free entries; `cap` bounds the number
/// of search nodes visited.
pub fn tables_matching(
    dom: &Obj,
    cod: &Obj,
    pinned: &BTreeMap<Elem, Elem>,
    cap: u64,
) -> Result<Vec<Morphism>> {
    // seed the partial table and check pinned entries are even plausible
    let mut table = BTreeMap::new();
    for (k, v) in pinned {
        if !dom.carrier().contains(k) || !cod.carrier().contains(v) {
            return Ok(vec![]);
        }
        if let Some(prev) = table.insert(k.clone(), v.clone()) {
            if prev != *v {
                return Ok(vec![]);
            }
        }
    }
    if let (Some(pd), Some(pc)) = (dom.point(), cod.point()) {
        match table.get(pd) {
            Some(v) if v != pc => return Ok(vec![]),
            _ => {
                table.insert(pd.clone(), pc.clone());
            }
        }
    }

    // propagate one entry through the monoid action; false on conflict
    fn propagate(dom: &Obj, cod: &Obj, table: &mut BTreeMap<Elem, Elem>) -> bool {
        let (Some(ad), Some(ac)) = (&dom.0.mact, &cod.0.mact) else {
            return true;
        };
        if ad.monoid != ac.monoid {
            return false;
        }
        loop {
            let mut new_entries = Vec::new();
            for (k, v) in table.iter() {
                for m in &ad.monoid.elems {
                    let (Some(km), Some(vm)) = (ad.act(k, m), ac.act(v, m)) else {
                        return false;
                    };
                    match table.get(km) {
                        Some(existing) if existing != vm => return false,
                        Some(_) => {}
                        None => new_entries.push((km.clone(), vm.clone())),
                    }
                }
            }
            if new_entries.is_empty() {
                return true;
            }
            for (k, v) in new_entries {
                if let Some(prev) = table.insert(k.clone(), v.clone()) {
                    if prev != v {
                        return false;
                    }
                }
            }
        }
    }
    // order compatibility of the partial table
    fn order_ok(dom: &Obj, cod: &Obj, table: &BTreeMap<Elem, Elem>) -> bool {
        if dom.0.order.is_none() || cod.0.order.is_none() {
            return true;
        }
        for (a, va) in table {
            for (b, vb) in table {
                if dom.leq(a, b) && !cod.leq(va, vb) {
                    return false;
                }
            }
        }
        true
    }

    if !propagate(dom, cod, &mut table) || !order_ok(dom, cod, &table) {
        return Ok(vec![]);
    }

    let free: Vec<Elem> = dom
        .carrier()
        .iter()
        .filter(|e| !table.contains_key(*e))
        .cloned()
        .collect();

    let mut out = Vec::new();
    let mut visited = 0u64;
    fn dfs(
        dom: &Obj,
        cod: &Obj,
        free: &[Elem],
        table: BTreeMap<Elem, Elem>,
        visited: &mut u64,
        cap: u64,
        out: &mut Vec<Morphism>,
    ) -> Result<()> {
        let Some(e) = free.iter().find(|e| !table.contains_key(*e)) else {
            let m = Morphism {
                dom: dom.clone(),
                cod: cod.clone(),
                table,
            };
            if preserves_decorations(&m) {
                out.push(m);
            }
            return Ok(());
        };
        for v in cod.carrier() {
            *visited += 1;
            if *visited > cap {
                return Err(LabError::SearchBoundExceeded {
                    what: format!("tables {} → {}", dom, cod),
                    size: *visited,
                    cap,
                });
            }
            let mut t = table.clone();
            t.insert(e.clone(), v.clone());
            if propagate(dom, cod, &mut t) && order_ok(dom, cod, &t) {
                dfs(dom, cod, free, t, visited, cap, out)?;
            }
        }
        Ok(())
    }
    dfs(dom, cod, &free, table, &mut visited, cap, &mut out)?;
    out.sort();
    Ok(out)
}

/// Morphisms `dom → cod` of `c` whose tables extend `pinned`. In concrete
/// categories the tables are synthesized directly; otherwise the hom-set is
/// enumerated and filtered.
pub fn morphisms_matching(
    c: &Category,
    dom: &Obj,
    cod: &Obj,
    pinned: &BTreeMap<Elem, Elem>,
    cap: u64,
) -> Result<Vec<Morphism>> {
    if c.is_concrete() {
        return tables_matching(dom, cod, pinned, cap);
    }
    Ok(c.hom(dom, cod)?
        .into_iter()
        .filter(|m| {
            pinned
                .iter()
                .all(|(k, v)| m.try_apply(k) == Some(v))
        })
        .collect())
}

type HomFn = dyn Fn(&Obj, &Obj) -> Result<Vec<Morphism>>;
type IdFn = dyn Fn(&Obj) -> Morphism;
type CompFn = dyn Fn(&Morphism, &Morphism) -> Result<Morphism>;

pub struct CatOps {
    pub hom: Box<HomFn>,
    pub identity: Box<IdFn>,
    pub compose: Box<CompFn>,
    /// Explicit object list for table-presented categories.
    pub objects: Option<Vec<Obj>>,
}

/// A computable category with a finite probe window.
#[derive(Clone)]
pub struct Category {
    pub name: String,
    pub probe: Vec<Obj>,
    /// True when hom-sets are exactly the decoration-preserving tables, so
    /// searches may synthesize morphisms without materializing hom-sets.
    concrete: bool,
    ops: Rc<CatOps>,
}

impl fmt::Debug for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Category({})", self.name)
    }
}

impl Category {
    pub fn from_ops(name: impl Into<String>, probe: Vec<Obj>, ops: CatOps) -> Category {
        Category {
            name: name.into(),
            probe,
            concrete: false,
            ops: Rc::new(ops),
        }
    }

    pub fn is_concrete(&self) -> bool {
        self.concrete
    }

    /// A concrete category: morphisms are all decoration-preserving tables.
    pub fn concrete(name: impl Into<String>, probe: Vec<Obj>, bounds: Bounds) -> Category {
        let cap = bounds.hom_cap;
        let mut cat = Category::from_ops(
            name,
            probe,
            CatOps {
                hom: Box::new(move |x: &Obj, y: &Obj| {
                    let tables = all_tables(x.carrier(), y.carrier(), cap).map_err(|e| match e {
                        LabError::HomBoundExceeded { size, cap, .. } => {
                            LabError::HomBoundExceeded {
                                dom: x.id().to_string(),
                                cod: y.id().to_string(),
                                size,
                                cap,
                            }
                        }
                        other => other,
                    })?;
                    let mut out: Vec<Morphism> = tables
                        .into_iter()
                        .map(|t| Morphism {
                            dom: x.clone(),
                            cod: y.clone(),
                            table: t,
                        })
                        .filter(preserves_decorations)
                        .collect();
                    out.sort();
                    Ok(out)
                }),
                identity: Box::new(|x: &Obj| Morphism::identity(x)),
                compose: Box::new(|g: &Morphism, f: &Morphism| {
                    if f.cod != g.dom {
                        return Err(LabError::PartialComposition(format!(
                            "cod({f}) != dom({g})"
                        )));
                    }
                    Ok(g.after_table(f))
                }),
                objects: None,
            },
        );
        cat.concrete = true;
        cat
    }

    /// A table-presented category: explicit objects, named morphisms, and an
    /// explicit composition table on names.
    pub fn table(
        name: impl Into<String>,
        objects: Vec<Obj>,
        morphisms: Vec<(String, Morphism)>,
        compose_table: BTreeMap<(String, String), String>,
        probe: Vec<Obj>,
    ) -> Category {
        let by_name: Rc<BTreeMap<String, Morphism>> =
            Rc::new(morphisms.iter().cloned().collect());
        let by_mor: Rc<BTreeMap<Morphism, String>> = Rc::new(
            morphisms
                .iter()
                .map(|(n, m)| (m.clone(), n.clone()))
                .collect(),
        );
        let mors: Vec<(String, Morphism)> = morphisms;
        let by_name_h = by_name.clone();
        let by_mor_c = by_mor;
        let by_name_c = by_name;
        let mors_id = mors.clone();
        Category::from_ops(
            name,
            probe,
            CatOps {
                hom: Box::new(move |x: &Obj, y: &Obj| {
                    let mut out: Vec<Morphism> = by_name_h
                        .values()
                        .filter(|m| &m.dom == x && &m.cod == y)
                        .cloned()
                        .collect();
                    out.sort();
                    out.dedup();
                    Ok(out)
                }),
                identity: Box::new(move |x: &Obj| {
                    let idt = Morphism::identity(x);
                    // prefer a declared morphism with the identity table
                    for (_, m) in &mors_id {
                        if m == &idt {
                            return m.clone();
                        }
                    }
                    idt
                }),
                compose: Box::new(move |g: &Morphism, f: &Morphism| {
                    if f.cod != g.dom {
                        return Err(LabError::PartialComposition(format!(
                            "cod({f}) != dom({g})"
                        )));
                    }
                    let (Some(gn), Some(fn_)) = (by_mor_c.get(g), by_mor_c.get(f)) else {
                        return Err(LabError::Other(
                            "compose on morphisms outside the table".into(),
                        ));
                    };
                    match compose_table.get(&(gn.clone(), fn_.clone())) {
                        Some(hn) => by_name_c.get(hn).cloned().ok_or_else(|| {
                            LabError::Other(format!("compose table names unknown morphism {hn}"))
                        }),
                        None => Err(LabError::Other(format!(
                            "compose table missing entry ({gn}, {fn_})"
                        ))),
                    }
                }),
                objects: Some(objects),
            },
        )
    }

    pub fn hom(&self, x: &Obj, y: &Obj) -> Result<Vec<Morphism>> {
        (self.ops.hom)(x, y)
    }
    pub fn identity(&self, x: &Obj) -> Morphism {
        (self.ops.identity)(x)
    }
    /// `compose(g, f) = g ∘ f` (apply `f` first).
    pub fn compose(&self, g: &Morphism, f: &Morphism) -> Result<Morphism> {
        (self.ops.compose)(g, f)
    }
    /// Compose a chain given outermost-first: `chain([h, g, f]) = h∘g∘f`.
    pub fn compose_chain(&self, ms: &[&Morphism]) -> Result<Morphism> {
        let mut it = ms.iter().rev();
        let mut acc = (*it.next().expect("nonempty chain")).clone();
        for m in it {
            acc = self.compose(m, &acc)?;
        }
        Ok(acc)
    }
    pub fn objects(&self) -> Option<&[Obj]> {
        self.ops.objects.as_deref()
    }
    pub fn with_probe(&self, probe: Vec<Obj>) -> Category {
        Category {
            name: self.name.clone(),
            probe,
            concrete: self.concrete,
            ops: self.ops.clone(),
        }
    }
    /// Search the hom-set for a two-sided inverse of `f`.
    pub fn find_inverse(&self, f: &Morphism) -> Result<Option<Morphism>> {
        let id_dom = self.identity(&f.dom);
        let id_cod = self.identity(&f.cod);
        for g in self.hom(&f.cod, &f.dom)? {
            if self.compose(&g, f)? == id_dom && self.compose(f, &g)? == id_cod {
                return Ok(Some(g));
            }
        }
        Ok(None)
    }
}

/// Build the product category of two categories. Morphisms carry both
/// component tables disjointly (left entries tagged `inl`, right `inr`).
pub fn product_category(a: &Category, b: &Category) -> Category {
    let an = a.clone();
    let bn = b.clone();
    let probe: Vec<Obj> = a
        .probe
        .iter()
        .flat_map(|x| b.probe.iter().map(move |y| pair_obj(x, y)))
        .collect();
    let objects = match (a.objects(), b.objects()) {
        (Some(xs), Some(ys)) => Some(
            xs.iter()
                .flat_map(|x| ys.iter().map(move |y| pair_obj(x, y)))
                .collect(),
        ),
        _ => None,
    };
    let (a1, b1) = (an.clone(), bn.clone());
    let (a2, b2) = (an.clone(), bn.clone());
    let (a3, b3) = (an.clone(), bn.clone());
    Category::from_ops(
        format!("({}×{})", a.name, b.name),
        probe,
        CatOps {
            hom: Box::new(move |x: &Obj, y: &Obj| {
                let (xl, xr) = x.parts().ok_or_else(|| {
                    LabError::Other(format!("{} is not a product-category object", x))
                })?;
                let (yl, yr) = y
                    .parts()
                    .ok_or_else(|| LabError::Other(format!("{} is not a product-category object", y)))?;
                let fs = a1.hom(xl, yl)?;
                let gs = b1.hom(xr, yr)?;
                let mut out = Vec::with_capacity(fs.len() * gs.len());
                for f in &fs {
                    for g in &gs {
                        out.push(pair_mor(x, y, f, g));
                    }
                }
                out.sort();
                Ok(out)
            }),
            identity: Box::new(move |x: &Obj| {
                let (xl, xr) = x.parts().expect("product-category object");
                pair_mor(x, x, &a2.identity(xl), &b2.identity(xr))
            }),
            compose: Box::new(move |g: &Morphism, f: &Morphism| {
                if f.cod != g.dom {
                    return Err(LabError::PartialComposition(format!("cod({f}) != dom({g})")));
                }
                let (fl, fr) = unpair_mor(f)?;
                let (gl, gr) = unpair_mor(g)?;
                let hl = a3.compose(&gl, &fl)?;
                let hr = b3.compose(&gr, &fr)?;
                Ok(pair_mor(&f.dom, &g.cod, &hl, &hr))
            }),
            objects,
        },
    )
}

/// The object `(x, y)` of a product category.
pub fn pair_obj(x: &Obj, y: &Obj) -> Obj {
    let carrier: Vec<Elem> = x
        .carrier()
        .iter()
        .map(|e| Elem::inl(e.clone()))
        .chain(y.carrier().iter().map(|e| Elem::inr(e.clone())))
        .collect();
    Obj::new(format!("<{},{}>", x.id(), y.id()), carrier).with_parts(x.clone(), y.clone())
}

/// The morphism `(f, g)` of a product category.
pub fn pair_mor(dom: &Obj, cod: &Obj, f: &Morphism, g: &Morphism) -> Morphism {
    let table: BTreeMap<Elem, Elem> = f
        .table
        .iter()
        .map(|(k, v)| (Elem::inl(k.clone()), Elem::inl(v.clone())))
        .chain(
            g.table
                .iter()
                .map(|(k, v)| (Elem::inr(k.clone()), Elem::inr(v.clone()))),
        )
        .collect();
    Morphism {
        dom: dom.clone(),
        cod: cod.clone(),
        table,
    }
}

/// Split a product-category morphism into its components.
pub fn unpair_mor(m: &Morphism) -> Result<(Morphism, Morphism)> {
    let (dl, dr) = m
        .dom
        .parts()
        .ok_or_else(|| LabError::Other(format!("{} has no product dom", m)))?;
    let (cl, cr) = m
        .cod
        .parts()
        .ok_or_else(|| LabError::Other(format!("{} has no product cod", m)))?;
    let mut lt = BTreeMap::new();
    let mut rt = BTreeMap::new();
    for (k, v) in &m.table {
        match (k, v) {
            (Elem::Inl(k1), Elem::Inl(v1)) => {
                lt.insert((**k1).clone(), (**v1).clone());
            }
            (Elem::Inr(k1), Elem::Inr(v1)) => {
                rt.insert((**k1).clone(), (**v1).clone());
            }
            _ => {
                return Err(LabError::Other(format!(
                    "mixed tags in product morphism {m}"
                )))
            }
        }
    }
    Ok((
        Morphism {
            dom: dl.clone(),
            cod: cl.clone(),
            table: lt,
        },
        Morphism {
            dom: dr.clone(),
            cod: cr.clone(),
            table: rt,
        },
    ))
}

/// Build the opposite category. A morphism `x → y` of the result carries the
/// table of the underlying morphism `y → x`.
pub fn opposite_category(a: &Category) -> Category {
    let a1 = a.clone();
    let a2 = a.clone();
    let a3 = a.clone();
    Category::from_ops(
        format!("op({})", a.name),
        a.probe.clone(),
        CatOps {
            hom: Box::new(move |x: &Obj, y: &Obj| {
                let mut out: Vec<Morphism> = a1
                    .hom(y, x)?
                    .into_iter()
                    .map(|m| m.retag(x.clone(), y.clone()))
                    .collect();
                out.sort();
                Ok(out)
            }),
            identity: Box::new(move |x: &Obj| a2.identity(x)),
            compose: Box::new(move |g: &Morphism, f: &Morphism| {
                // g: y→z, f: x→y in op; underlying g0: z→y, f0: y→x
                if f.cod != g.dom {
                    return Err(LabError::PartialComposition(format!("cod({f}) != dom({g})")));
                }
                let g0 = g.retag(g.cod.clone(), g.dom.clone());
                let f0 = f.retag(f.cod.clone(), f.dom.clone());
                let h0 = a3.compose(&f0, &g0)?;
                Ok(h0.retag(f.dom.clone(), g.cod.clone()))
            }),
            objects: a.objects().map(|o| o.to_vec()),
        },
    )
}

/// Recover the underlying morphism of an opposite-category morphism.
pub fn op_underlying(m: &Morphism) -> Morphism {
    m.retag(m.cod.clone(), m.dom.clone())
}

/// A functor given by object and morphism procedures.
#[derive(Clone)]
pub struct FunctorData {
    pub name: String,
    pub source: Category,
    pub target: Category,
    on_obj: Rc<dyn Fn(&Obj) -> Obj>,
    on_mor: Rc<dyn Fn(&Morphism) -> Morphism>,
}

impl fmt::Debug for FunctorData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FunctorData({})", self.name)
    }
}

impl FunctorData {
    pub fn new(
        name: impl Into<String>,
        source: Category,
        target: Category,
        on_obj: impl Fn(&Obj) -> Obj + 'static,
        on_mor: impl Fn(&Morphism) -> Morphism + 'static,
    ) -> FunctorData {
        FunctorData {
            name: name.into(),
            source,
            target,
            on_obj: Rc::new(on_obj),
            on_mor: Rc::new(on_mor),
        }
    }
    pub fn identity(c: &Category) -> FunctorData {
        FunctorData::new("Id", c.clone(), c.clone(), |x| x.clone(), |m| m.clone())
    }
    pub fn obj(&self, x: &Obj) -> Obj {
        (self.on_obj)(x)
    }
    pub fn mor(&self, m: &Morphism) -> Morphism {
        (self.on_mor)(m)
    }
    /// Composite functor `self ∘ other`.
    pub fn after(&self, other: &FunctorData) -> FunctorData {
        let f = self.clone();
        let g = other.clone();
        let f2 = self.clone();
        let g2 = other.clone();
        FunctorData::new(
            format!("({}∘{})", self.name, other.name),
            other.source.clone(),
            self.target.clone(),
            move |x| f.obj(&g.obj(x)),
            move |m| f2.mor(&g2.mor(m)),
        )
    }
}

/// A natural transformation given by a component procedure.
#[derive(Clone)]
pub struct NaturalData {
    pub name: String,
    pub source: FunctorData,
    pub target: FunctorData,
    component: Rc<dyn Fn(&Obj) -> Morphism>,
}

impl fmt::Debug for NaturalData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NaturalData({})", self.name)
    }
}

impl NaturalData {
    pub fn new(
        name: impl Into<String>,
        source: FunctorData,
        target: FunctorData,
        component: impl Fn(&Obj) -> Morphism + 'static,
    ) -> NaturalData {
        NaturalData {
            name: name.into(),
            source,
            target,
            component: Rc::new(component),
        }
    }
    pub fn identity(f: &FunctorData) -> NaturalData {
        let f1 = f.clone();
        NaturalData::new("id", f.clone(), f.clone(), move |x| {
            f1.target.identity(&f1.obj(x))
        })
    }
    pub fn at(&self, x: &Obj) -> Morphism {
        (self.component)(x)
    }
}

/// One failed law instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub law: String,
    pub detail: String,
}

/// Outcome of a law check: pass, or a list of counterexamples.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LawReport {
    pub failures: Vec<Failure>,
}

impl LawReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
    pub fn fail(&mut self, law: impl Into<String>, detail: impl Into<String>) {
        self.failures.push(Failure {
            law: law.into(),
            detail: detail.into(),
        });
    }
    pub fn merge(&mut self, other: LawReport) {
        self.failures.extend(other.failures);
    }
    pub fn summary(&self) -> String {
        if self.pass() {
            "pass".to_string()
        } else {
            format!(
                "fail: {}",
                self.failures
                    .iter()
                    .map(|f| format!("[{}] {}", f.law, f.detail))
                    .collect::<Vec<_>>()
                    .join("; ")
            )
        }
    }
}

/// Check identity and associativity laws over the probe window.
pub fn validate_category(c: &Category) -> Result<LawReport> {
    if c.probe.is_empty() {
        return Err(LabError::EmptyProbe);
    }
    let mut rep = LawReport::default();
    let probe = &c.probe;
    // cache hom sets
    let mut homs: BTreeMap<(usize, usize), Vec<Morphism>> = BTreeMap::new();
    for (i, x) in probe.iter().enumerate() {
        for (j, y) in probe.iter().enumerate() {
            homs.insert((i, j), c.hom(x, y)?);
        }
    }
    // duplicate-freeness
    for ((i, j), hs) in &homs {
        let mut sorted = hs.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != hs.len() {
            rep.fail(
                "hom-duplicate-free",
                format!("hom({}, {}) contains duplicates", probe[*i], probe[*j]),
            );
        }
    }
    // identity laws
    for (i, x) in probe.iter().enumerate() {
        let idx = c.identity(x);
        if idx.dom != *x || idx.cod != *x {
            rep.fail("identity-typing", format!("id_{x} has wrong endpoints"));
            continue;
        }
        for (j, y) in probe.iter().enumerate() {
            for f in &homs[&(i, j)] {
                match c.compose(f, &idx) {
                    Ok(h) if &h == f => {}
                    Ok(h) => rep.fail(
                        "right-identity",
                        format!("{f} ∘ id_{x} = {h}"),
                    ),
                    Err(e) => rep.fail("right-identity", format!("{f} ∘ id_{x}: {e}")),
                }
            }
            let idy = c.identity(y);
            for f in &homs[&(i, j)] {
                match c.compose(&idy, f) {
                    Ok(h) if &h == f => {}
                    Ok(h) => rep.fail("left-identity", format!("id_{y} ∘ {f} = {h}")),
                    Err(e) => rep.fail("left-identity", format!("id_{y} ∘ {f}: {e}")),
                }
            }
        }
    }
    // composition typing + associativity
    for i in 0..probe.len() {
        for j in 0..probe.len() {
            for k in 0..probe.len() {
                for f in &homs[&(i, j)] {
                    for g in &homs[&(j, k)] {
                        let gf = match c.compose(g, f) {
                            Ok(m) => m,
                            Err(e) => {
                                rep.fail("compose-defined", format!("{g} ∘ {f}: {e}"));
                                continue;
                            }
                        };
                        if gf.dom != f.dom || gf.cod != g.cod {
                            rep.fail(
                                "compose-typing",
                                format!("{g} ∘ {f} has endpoints {} -> {}", gf.dom, gf.cod),
                            );
                            continue;
                        }
                        for l in 0..probe.len() {
                            for h in &homs[&(k, l)] {
                                let hg = match c.compose(h, g) {
                                    Ok(m) => m,
                                    Err(_) => continue,
                                };
                                let lhs = match c.compose(h, &gf) {
                                    Ok(m) => m,
                                    Err(e) => {
                                        rep.fail(
                                            "associativity",
                                            format!("h∘(g∘f) undefined: {e}"),
                                        );
                                        continue;
                                    }
                                };
                                let rhs = match c.compose(&hg, f) {
                                    Ok(m) => m,
                                    Err(e) => {
                                        rep.fail(
                                            "associativity",
                                            format!("(h∘g)∘f undefined: {e}"),
                                        );
                                        continue;
                                    }
                                };
                                if lhs != rhs {
                                    rep.fail(
                                        "associativity",
                                        format!("f={f} g={g} h={h}: h∘(g∘f)={lhs} ≠ (h∘g)∘f={rhs}"),
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

/// Check that a functor preserves identities and probe composites.
pub fn validate_functor(f: &FunctorData) -> Result<LawReport> {
    let mut rep = LawReport::default();
    let src = &f.source;
    let tgt = &f.target;
    for x in &src.probe {
        let fx = f.obj(x);
        // the image object must support hom enumeration in the target
        // (a blown size cap is not "outside the target")
        match tgt.hom(&fx, &fx) {
            Ok(_) | Err(LabError::HomBoundExceeded { .. }) => {}
            Err(e) => return Err(LabError::ObjectOutsideTarget(format!("{fx}: {e}"))),
        }
        let lhs = f.mor(&src.identity(x));
        let rhs = tgt.identity(&fx);
        if lhs != rhs {
            rep.fail("functor-identity", format!("F(id_{x}) = {lhs} ≠ {rhs}"));
        }
    }
    for x in &src.probe {
        for y in &src.probe {
            for m in src.hom(x, y)? {
                let fm = f.mor(&m);
                if fm.dom != f.obj(x) || fm.cod != f.obj(y) {
                    rep.fail(
                        "functor-typing",
                        format!("F({m}) has endpoints {} -> {}", fm.dom, fm.cod),
                    );
                    continue;
                }
                match tgt.hom(&fm.dom, &fm.cod) {
                    Ok(hs) => {
                        if !hs.contains(&fm) {
                            rep.fail(
                                "functor-image-in-hom",
                                format!("F({m}) = {fm} is not a morphism of {}", tgt.name),
                            );
                        }
                    }
                    // hom too large to enumerate: fall back to a direct table
                    // check when the image looks like a plain concrete map
                    Err(LabError::HomBoundExceeded { .. }) => {
                        let keys: Vec<&Elem> = fm.table.keys().collect();
                        let dom_ok = keys.len() == fm.dom.carrier().len()
                            && keys.iter().all(|k| fm.dom.carrier().contains(k));
                        let cod_ok =
                            fm.table.values().all(|v| fm.cod.carrier().contains(v));
                        if dom_ok && cod_ok && !preserves_decorations(&fm) {
                            rep.fail(
                                "functor-image-in-hom",
                                format!(
                                    "F({m}) = {fm} does not preserve decorations in {}",
                                    tgt.name
                                ),
                            );
                        }
                    }
                    Err(e) => return Err(e),
                }
            }
        }
    }
    for x in &src.probe {
        for y in &src.probe {
            for z in &src.probe {
                let ns = src.hom(y, z)?;
                for m in src.hom(x, y)? {
                    for n in &ns {
                        let nm = src.compose(&n, &m)?;
                        let lhs = f.mor(&nm);
                        let rhs = tgt.compose(&f.mor(&n), &f.mor(&m))?;
                        if lhs != rhs {
                            rep.fail(
                                "functor-composition",
                                format!("F({n}∘{m}) = {lhs} ≠ {rhs}"),
                            );
                        }
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// Check naturality squares over probe morphisms.
pub fn validate_natural(n: &NaturalData) -> Result<LawReport> {
    let mut rep = LawReport::default();
    let src = &n.source.source;
    let tgt = &n.source.target;
    for x in &src.probe {
        let t = n.at(x);
        let fx = n.source.obj(x);
        let gx = n.target.obj(x);
        if t.dom != fx || t.cod != gx {
            return Err(LabError::ComponentTypeMismatch(format!(
                "component at {x} is {} -> {}, expected {} -> {}",
                t.dom, t.cod, fx, gx
            )));
        }
    }
    for x in &src.probe {
        for y in &src.probe {
            for m in src.hom(x, y)? {
                let lhs = tgt.compose(&n.at(y), &n.source.mor(&m))?;
                let rhs = tgt.compose(&n.target.mor(&m), &n.at(x))?;
                if lhs != rhs {
                    rep.fail(
                        "naturality",
                        format!("square at {m}: τ∘F(m)={lhs} ≠ G(m)∘τ={rhs}"),
                    );
                }
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn finset_obj(n: usize, id: &str) -> Obj {
        Obj::new(
            id,
            (0..n).map(|i| Elem::atom(format!("x{i}"))).collect(),
        )
    }

    fn small_finset() -> Category {
        let probe = vec![finset_obj(0, "0"), finset_obj(1, "1"), finset_obj(2, "2")];
        Category::concrete("finset", probe, Bounds::default())
    }

    #[test]
    fn finset_is_a_category() {
        let c = small_finset();
        let rep = validate_category(&c).unwrap();
        assert!(rep.pass(), "{}", rep.summary());
    }

    #[test]
    fn hom_counts_match_cardinalities() {
        let c = small_finset();
        let two = &c.probe[2];
        assert_eq!(c.hom(two, two).unwrap().len(), 4);
        assert_eq!(c.hom(&c.probe[0], two).unwrap().len(), 1);
        assert_eq!(c.hom(two, &c.probe[0]).unwrap().len(), 0);
    }

    #[test]
    fn hom_enumeration_is_deterministic() {
        let c = small_finset();
        let two = &c.probe[2];
        assert_eq!(c.hom(two, two).unwrap(), c.hom(two, two).unwrap());
    }

    #[test]
    fn hom_cap_is_an_error_not_truncation() {
        let big = finset_obj(7, "7");
        let c = Category::concrete("finset", vec![big.clone()], Bounds::default());
        match c.hom(&big, &big) {
            Err(LabError::HomBoundExceeded { size, cap, .. }) => {
                assert_eq!(size, 823543);
                assert_eq!(cap, 4096);
            }
            other => panic!("expected HomBoundExceeded, got {other:?}"),
        }
    }

    #[test]
    fn empty_probe_is_rejected() {
        let c = Category::concrete("finset", vec![], Bounds::default());
        assert_eq!(validate_category(&c), Err(LabError::EmptyProbe));
    }

    #[test]
    fn opposite_is_involutive_on_observables() {
        let c = small_finset();
        let opop = opposite_category(&opposite_category(&c));
        for x in &c.probe {
            for y in &c.probe {
                assert_eq!(c.hom(x, y).unwrap(), opop.hom(x, y).unwrap());
            }
        }
        let rep = validate_category(&opposite_category(&c)).unwrap();
        assert!(rep.pass(), "{}", rep.summary());
    }

    #[test]
    fn product_category_componentwise() {
        let c = small_finset();
        let p = product_category(&c, &c);
        assert_eq!(p.probe.len(), 9);
        let rep = validate_category(&p.with_probe(
            // keep the exhaustive check small
            vec![p.probe[4].clone(), p.probe[5].clone()],
        ))
        .unwrap();
        assert!(rep.pass(), "{}", rep.summary());
    }

    #[test]
    fn product_morphisms_stay_distinct_over_empty_carriers() {
        let c = small_finset();
        let p = product_category(&c, &c);
        let zero_one = pair_obj(&c.probe[0], &c.probe[1]);
        let zero_two = pair_obj(&c.probe[0], &c.probe[2]);
        // left components are the unique map 0→0; right components differ
        assert_eq!(p.hom(&zero_one, &zero_two).unwrap().len(), 2);
    }

    #[test]
    fn decorations_filter_hom_sets() {
        let b = Bounds::default();
        let pt2 = Obj::new("pt2", vec![Elem::atom("s"), Elem::atom("a")])
            .with_point(Elem::atom("s"));
        let c = Category::concrete("finsetpt", vec![pt2.clone()], b);
        // point-preserving self-maps of a 2-element pointed set: s↦s, a↦{s,a}
        assert_eq!(c.hom(&pt2, &pt2).unwrap().len(), 2);
    }

    #[test]
    fn order_decoration_requires_monotone() {
        let b = Bounds::default();
        let x0 = Elem::atom("p");
        let x1 = Elem::atom("q");
        let chain2 = Obj::new("chain2", vec![x0.clone(), x1.clone()]).with_order(vec![
            (x0.clone(), x0.clone()),
            (x1.clone(), x1.clone()),
            (x0.clone(), x1.clone()),
        ]);
        let c = Category::concrete("finpos", vec![chain2.clone()], b);
        // monotone self-maps of the 2-chain: const p, const q, identity
        assert_eq!(c.hom(&chain2, &chain2).unwrap().len(), 3);
    }

    #[test]
    fn corrupted_table_category_fails_validation() {
        // two objects, one nonidentity arrow; corrupt id∘f
        let a = finset_obj(1, "A");
        let b = finset_obj(1, "B");
        let ida = Morphism::identity(&a);
        let idb = Morphism::identity(&b);
        let f = Morphism::new(
            a.clone(),
            b.clone(),
            vec![(Elem::atom("x0"), Elem::atom("x0"))],
        );
        let mut comp = BTreeMap::new();
        comp.insert(("idA".into(), "idA".into()), "idA".to_string());
        comp.insert(("idB".into(), "idB".into()), "idB".to_string());
        comp.insert(("f".into(), "idA".into()), "f".to_string());
        // corrupted: id_B ∘ f should be f
        comp.insert(("idB".into(), "f".into()), "idB".to_string());
        let cat = Category::table(
            "mutant",
            vec![a.clone(), b.clone()],
            vec![
                ("idA".into(), ida),
                ("idB".into(), idb),
                ("f".into(), f),
            ],
            comp,
            vec![a, b],
        );
        let rep = validate_category(&cat).unwrap();
        assert!(!rep.pass());
        assert!(rep.failures.iter().any(|f| f.law == "left-identity"
            || f.law == "compose-typing"
            || f.law == "associativity"));
    }

    #[test]
    fn identity_functor_and_natural_pass() {
        let c = small_finset();
        let idf = FunctorData::identity(&c);
        assert!(validate_functor(&idf).unwrap().pass());
        assert!(validate_natural(&NaturalData::identity(&idf)).unwrap().pass());
    }

    #[test]
    fn swapped_natural_components_fail() {
        let c = small_finset();
        let idf = FunctorData::identity(&c);
        let c2 = c.clone();
        // component at X is a constant map whenever possible: not natural
        let bogus = NaturalData::new("bogus", idf.clone(), idf.clone(), move |x: &Obj| {
            let first = x.carrier().first().cloned();
            match first {
                Some(e) => Morphism::new(
                    x.clone(),
                    x.clone(),
                    x.carrier().iter().map(|k| (k.clone(), e.clone())),
                ),
                None => c2.identity(x),
            }
        });
        let rep = validate_natural(&bogus).unwrap();
        assert!(!rep.pass());
    }

    #[test]
    fn canonical_morphism_order_is_lexicographic() {
        let c = small_finset();
        let two = &c.probe[2];
        let hom = c.hom(two, two).unwrap();
        let mut sorted = hom.clone();
        sorted.sort();
        assert_eq!(hom, sorted);
    }

    #[test]
    fn object_invariants_checked() {
        let bad = Obj::new("bad", vec![Elem::atom("a")]).with_point(Elem::atom("zz"));
        assert!(bad.well_formed().is_err());
        let ok = Obj::new("ok", vec![Elem::atom("a")]).with_point(Elem::atom("a"));
        assert!(ok.well_formed().is_ok());
    }
}
