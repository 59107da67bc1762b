//! Exhaustive enumeration of genus-zero buildings with one positive end.
//!
//! A genus-zero building with a single positive end is a rooted tree: every
//! component has exactly one positive end, and each negative end above the
//! bottom level is matched to the positive end of one component of the next
//! level (a trivial cylinder when nothing happens there). The enumerator
//! builds such trees level by level from a finite catalog of components and
//! prunes with exact lower bounds on the index of any completion, computed by
//! dynamic programming over the same catalog.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::orbit_index::{OrbitRef, RotationData};

use super::{
    BuildingError, BuildingSkeleton, ComponentKind, ComponentSkeleton, EndSlot, GenericityProfile,
    Level, Matching,
};

const INF: i64 = 1 << 40;

/// Size limits of the enumeration.
///
/// `max_total_multiplicity` bounds the multiplicity of every end, and also
/// the sum of the multiplicities of the negative ends of each component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EnumerationBounds {
    pub max_levels: usize,
    pub max_total_multiplicity: u32,
    pub max_index: i64,
    pub max_components_per_level: usize,
    pub max_negative_ends: usize,
}

impl Default for EnumerationBounds {
    fn default() -> Self {
        EnumerationBounds {
            max_levels: 4,
            max_total_multiplicity: 6,
            max_index: 3,
            max_components_per_level: 4,
            max_negative_ends: 1,
        }
    }
}

impl EnumerationBounds {
    fn validate(&self) -> Result<(), BuildingError> {
        if self.max_levels == 0
            || self.max_total_multiplicity == 0
            || self.max_components_per_level == 0
        {
            return Err(BuildingError::Precondition(
                "enumeration bounds must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Safety valves; hitting one returns [`BuildingError::EnumerationLimit`]
/// with the buildings found so far.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimits {
    pub max_buildings: usize,
    pub time_limit: Option<Duration>,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_buildings: 1_000_000,
            time_limit: None,
        }
    }
}

/// Orbit covers admitted by the profile, with cached index data.
pub(crate) struct Universe {
    pub refs: Vec<OrbitRef>,
    pub cz: Vec<i64>,
    pub index_of: HashMap<OrbitRef, usize>,
    pub excluded: Vec<(String, String)>,
}

impl Universe {
    pub fn build(
        orbits: &[Arc<RotationData>],
        profile: &GenericityProfile,
        bounds: &EnumerationBounds,
    ) -> Result<Universe, BuildingError> {
        let mut names = HashSet::new();
        for o in orbits {
            if !names.insert(o.name()) {
                return Err(BuildingError::Precondition(format!(
                    "duplicate orbit name {}",
                    o.name()
                )));
            }
        }
        let mut refs = Vec::new();
        let mut excluded = Vec::new();
        for o in orbits {
            let top = bounds.max_total_multiplicity.min(o.validity_bound());
            let covers: Vec<OrbitRef> = (1..=top)
                .map(|m| OrbitRef::new(Arc::clone(o), m))
                .collect::<Result<_, _>>()?;
            if profile.dynamically_convex && o.is_contractible() {
                if let Some(bad) = covers
                    .iter()
                    .find(|c| c.cz_index().map(|z| z < 3).unwrap_or(true))
                {
                    excluded.push((
                        o.name().to_string(),
                        format!("contractible cover {bad} has CZ < 3 (not dynamically convex)"),
                    ));
                    continue;
                }
            }
            for c in covers {
                let z = c.cz_index()?;
                if profile.condition_star && c.is_contractible() && z == 3 && c.multiplicity() > 1 {
                    excluded.push((c.label(), "contractible multiple cover with CZ = 3".into()));
                    continue;
                }
                refs.push(c);
            }
        }
        refs.sort();
        let cz = refs
            .iter()
            .map(|r| r.cz_index())
            .collect::<Result<Vec<_>, _>>()?;
        let index_of = refs
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        Ok(Universe {
            refs,
            cz,
            index_of,
            excluded,
        })
    }

    fn id(&self, r: &OrbitRef) -> Option<usize> {
        self.index_of.get(r).copied()
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Entry {
    pub comp: Arc<ComponentSkeleton>,
    pub index: i64,
    pub children: Vec<usize>,
}

/// Free homotopy constraint for a genus-zero curve with one positive end:
/// the positive end is homotopic to the product of the negative ends, so it
/// is contractible when they all are, and lies in the class of the unique
/// non-contractible negative end when there is exactly one.
fn homotopy_compatible(top: &OrbitRef, negatives: &[&OrbitRef]) -> bool {
    let nc: Vec<&&OrbitRef> = negatives.iter().filter(|o| !o.is_contractible()).collect();
    match nc.len() {
        0 => top.is_contractible(),
        1 => !top.is_contractible() && top.class_label() == nc[0].class_label(),
        _ => true,
    }
}

fn partitions(
    n: u32,
    max_part: u32,
    max_parts: usize,
    out: &mut Vec<Vec<u32>>,
    cur: &mut Vec<u32>,
) {
    if n == 0 {
        out.push(cur.clone());
        return;
    }
    if cur.len() == max_parts {
        return;
    }
    for p in (1..=max_part.min(n)).rev() {
        cur.push(p);
        partitions(n - p, p, max_parts, out, cur);
        cur.pop();
    }
}

/// Partitions of `n` into at most `max_parts` parts, largest part first.
fn partitions_of(n: u32, max_parts: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    partitions(n, n, max_parts, &mut out, &mut Vec::new());
    out
}

/// Every non-trivial-cylinder component admitted by the bounds and profile,
/// grouped by positive end.
pub(crate) fn build_catalog(
    uni: &Universe,
    orbits: &[Arc<RotationData>],
    profile: &GenericityProfile,
    bounds: &EnumerationBounds,
) -> Result<Vec<Vec<Entry>>, BuildingError> {
    let width = bounds.max_components_per_level;
    let budget = bounds.max_total_multiplicity;
    let mut catalog: Vec<Vec<Entry>> = vec![Vec::new(); uni.refs.len()];
    let mut seen: HashSet<String> = HashSet::new();
    let mut push =
        |catalog: &mut Vec<Vec<Entry>>, comp: ComponentSkeleton| -> Result<(), BuildingError> {
            let top = match uni.id(&comp.positive_ends[0]) {
                Some(t) => t,
                None => return Ok(()),
            };
            let mut children = Vec::with_capacity(comp.negative_ends.len());
            for e in &comp.negative_ends {
                match uni.id(e) {
                    Some(i) => children.push(i),
                    None => return Ok(()),
                }
            }
            if !seen.insert(comp.canonical()) {
                return Ok(());
            }
            let index = comp.component_index()?;
            catalog[top].push(Entry {
                comp: Arc::new(comp),
                index,
                children,
            });
            Ok(())
        };

    // Branched covers of trivial cylinders with at least two negative ends.
    for o in orbits {
        for d in 2..=budget {
            let top = match OrbitRef::new(Arc::clone(o), d) {
                Ok(t) if uni.id(&t).is_some() => t,
                _ => continue,
            };
            let _ = top;
            for parts in partitions_of(d, width) {
                if parts.len() < 2 {
                    continue;
                }
                let comp =
                    ComponentSkeleton::branched_cover_of_trivial_cylinder(o, &[d], &parts, 0)?;
                push(&mut catalog, comp)?;
            }
        }
    }

    // Negative-end multisets for somewhere injective curves.
    let mut multisets: Vec<Vec<usize>> = Vec::new();
    fn grow(
        uni: &Universe,
        start: usize,
        cur: &mut Vec<usize>,
        mult: u32,
        width: usize,
        budget: u32,
        out: &mut Vec<Vec<usize>>,
    ) {
        out.push(cur.clone());
        if cur.len() == width {
            return;
        }
        for i in start..uni.refs.len() {
            let m = uni.refs[i].multiplicity();
            if mult + m > budget {
                continue;
            }
            cur.push(i);
            grow(uni, i, cur, mult + m, width, budget, out);
            cur.pop();
        }
    }
    grow(uni, 0, &mut Vec::new(), 0, width, budget, &mut multisets);

    for (ti, top) in uni.refs.iter().enumerate() {
        for ms in &multisets {
            let negs: Vec<&OrbitRef> = ms.iter().map(|&i| &uni.refs[i]).collect();
            if ms.len() == 1 && ms[0] == ti {
                continue;
            }
            if !homotopy_compatible(top, &negs) {
                continue;
            }
            let k = ms.len() as i64;
            let ind_bar = k - 1 + uni.cz[ti] - ms.iter().map(|&i| uni.cz[i]).sum::<i64>();
            if profile.generic_j && ind_bar < 1 {
                continue;
            }
            let neg_owned: Vec<OrbitRef> = negs.iter().map(|o| (*o).clone()).collect();
            push(
                &mut catalog,
                ComponentSkeleton::somewhere_injective(top.clone(), neg_owned.clone()),
            )?;

            let neg_mult: u32 = negs.iter().map(|o| o.multiplicity()).sum();
            for d in 2..=budget {
                if top.multiplicity() * d > budget || neg_mult * d > budget {
                    break;
                }
                if uni.id(&top.iterate(d)?).is_none() {
                    continue;
                }
                let per_end: Vec<Vec<Vec<u32>>> = negs
                    .iter()
                    .map(|b| {
                        partitions_of(d, width)
                            .into_iter()
                            .filter(|p| {
                                p.iter()
                                    .all(|&x| b.iterate(x).ok().and_then(|r| uni.id(&r)).is_some())
                            })
                            .collect()
                    })
                    .collect();
                let mut choice = vec![0usize; negs.len()];
                loop {
                    if per_end.iter().any(|v| v.is_empty()) {
                        break;
                    }
                    let parts: Vec<Vec<u32>> = choice
                        .iter()
                        .zip(&per_end)
                        .map(|(&c, v)| v[c].clone())
                        .collect();
                    let n: usize = parts.iter().map(|p| p.len()).sum();
                    let b = d as i64 * (1 - k) - 1 + n as i64;
                    if n <= width && b >= 0 {
                        let comp =
                            ComponentSkeleton::cover_of(top.clone(), neg_owned.clone(), d, &parts)?;
                        push(&mut catalog, comp)?;
                    }
                    // odometer
                    let mut j = 0;
                    loop {
                        if j == choice.len() {
                            break;
                        }
                        choice[j] += 1;
                        if choice[j] < per_end[j].len() {
                            break;
                        }
                        choice[j] = 0;
                        j += 1;
                    }
                    if j == choice.len() {
                        break;
                    }
                }
            }
        }
    }

    for list in &mut catalog {
        list.sort_by_key(|a| a.comp.canonical());
    }
    Ok(catalog)
}

/// Exact lower bounds on the index of sub-buildings hanging from one end.
///
/// `cap[r][x]`: least index of a sub-building with positive end `x`, no
/// negative ends, using at most `r` further levels. `thru[r][x]`: the same
/// with exactly one negative end (a chain of trivial cylinders gives 0).
struct LowerBounds {
    cap: Vec<Vec<i64>>,
    thru: Vec<Vec<i64>>,
}

impl LowerBounds {
    fn compute(catalog: &[Vec<Entry>], levels: usize) -> Self {
        let n = catalog.len();
        let mut cap = vec![vec![INF; n]; levels + 1];
        let mut thru = vec![vec![0; n]; levels + 1];
        for r in 1..=levels {
            for x in 0..n {
                let mut best_cap = cap[r - 1][x];
                let mut best_thru = thru[r - 1][x];
                for e in &catalog[x] {
                    let caps: i64 = e.children.iter().map(|&c| cap[r - 1][c]).sum();
                    best_cap = best_cap.min(e.index + caps);
                    for &c in &e.children {
                        best_thru = best_thru.min(e.index + caps - cap[r - 1][c] + thru[r - 1][c]);
                    }
                }
                cap[r][x] = best_cap.min(INF);
                thru[r][x] = best_thru.min(INF);
            }
        }
        LowerBounds { cap, thru }
    }

    /// Least total index of completing all `pending` ends, of which at most
    /// `through` may reach the bottom of the building.
    fn pending(&self, pending: &[(usize, usize)], through: usize) -> i64 {
        let mut total = 0;
        let mut gains: Vec<i64> = Vec::with_capacity(pending.len());
        for &(x, r) in pending {
            let c = self.cap[r][x];
            let t = self.thru[r][x];
            total += c;
            if t < c {
                gains.push(t - c);
            }
        }
        gains.sort_unstable();
        total + gains.iter().take(through).sum::<i64>()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Choice {
    Trivial,
    Catalog(usize),
}

impl Choice {
    fn id(self) -> usize {
        match self {
            Choice::Trivial => 0,
            Choice::Catalog(i) => i + 1,
        }
    }
}

struct Node {
    orbit: usize,
    choice: Choice,
    level: usize,
    parent: Option<(usize, usize)>,
}

struct Shared<'a> {
    catalog: &'a [Vec<Entry>],
    // order[r][x]: catalog entries at x sorted by a lower bound on the index
    // of the entry plus whatever hangs below it with r levels left
    order: Vec<Vec<Vec<(i64, usize)>>>,
    lb: LowerBounds,
    trivial: Vec<Arc<ComponentSkeleton>>,
    self_ids: Vec<usize>,
    bounds: EnumerationBounds,
    limits: EnumerationLimits,
    deadline: Option<Instant>,
    found: AtomicUsize,
    stop: AtomicBool,
    reason: std::sync::Mutex<Option<String>>,
}

impl Shared<'_> {
    fn children(&self, n: &Node) -> &[usize] {
        match n.choice {
            Choice::Trivial => std::slice::from_ref(&self.self_ids[n.orbit]),
            Choice::Catalog(i) => &self.catalog[n.orbit][i].children,
        }
    }

    fn component(&self, n: &Node) -> Arc<ComponentSkeleton> {
        match n.choice {
            Choice::Trivial => Arc::clone(&self.trivial[n.orbit]),
            Choice::Catalog(i) => Arc::clone(&self.catalog[n.orbit][i].comp),
        }
    }

    fn halt(&self, reason: &str) {
        self.stop.store(true, Ordering::SeqCst);
        let mut r = self.reason.lock().expect("reason lock");
        if r.is_none() {
            *r = Some(reason.to_string());
        }
    }
}

struct Task<'s, 'a> {
    sh: &'s Shared<'a>,
    nodes: Vec<Node>,
    found: BTreeMap<String, BuildingSkeleton>,
    ticks: u64,
}

impl<'s, 'a> Task<'s, 'a> {
    fn run(
        sh: &'s Shared<'a>,
        top: usize,
        entry: usize,
    ) -> Result<BTreeMap<String, BuildingSkeleton>, BuildingError> {
        let mut t = Task {
            sh,
            nodes: Vec::new(),
            found: BTreeMap::new(),
            ticks: 0,
        };
        let e = &sh.catalog[top][entry];
        let rem = sh.bounds.max_levels - 1;
        let pending: Vec<(usize, usize)> = e.children.iter().map(|&c| (c, rem)).collect();
        if e.index + sh.lb.pending(&pending, sh.bounds.max_negative_ends) > sh.bounds.max_index {
            return Ok(t.found);
        }
        t.nodes.push(Node {
            orbit: top,
            choice: Choice::Catalog(entry),
            level: 0,
            parent: None,
        });
        t.after_level(0, 0, e.index)?;
        Ok(t.found)
    }

    fn after_level(
        &mut self,
        level: usize,
        start: usize,
        partial: i64,
    ) -> Result<(), BuildingError> {
        let sh = self.sh;
        let next: Vec<(usize, usize, usize)> = (start..self.nodes.len())
            .flat_map(|n| {
                sh.children(&self.nodes[n])
                    .iter()
                    .enumerate()
                    .map(move |(e, &c)| (c, n, e))
            })
            .collect();
        if next.len() <= sh.bounds.max_negative_ends {
            self.record(level)?;
        }
        if level + 1 < sh.bounds.max_levels
            && !next.is_empty()
            && next.len() <= sh.bounds.max_components_per_level
        {
            let start = self.nodes.len();
            self.assign(level + 1, &next, 0, partial, false, start)?;
        }
        Ok(())
    }

    fn assign(
        &mut self,
        level: usize,
        frontier: &[(usize, usize, usize)],
        i: usize,
        partial: i64,
        nontrivial: bool,
        start: usize,
    ) -> Result<(), BuildingError> {
        let sh = self.sh;
        if sh.stop.load(Ordering::Relaxed) {
            return Ok(());
        }
        self.ticks += 1;
        if self.ticks % 1024 == 1 {
            if let Some(d) = sh.deadline {
                if Instant::now() > d {
                    sh.halt("time limit");
                    return Ok(());
                }
            }
        }
        if i == frontier.len() {
            if nontrivial {
                self.after_level(level, start, partial)?;
            }
            return Ok(());
        }
        let (x, parent, end) = frontier[i];
        let levels = sh.bounds.max_levels;
        let rem = levels - level - 1;
        let through = sh.bounds.max_negative_ends;
        let max = sh.bounds.max_index;
        // Equal sibling ends are interchangeable: keep their choices sorted.
        let min_id = if i > 0 && frontier[i - 1].0 == x && frontier[i - 1].1 == parent {
            self.nodes.last().expect("sibling node").choice.id()
        } else {
            0
        };
        let mut pending: Vec<(usize, usize)> = frontier[i + 1..]
            .iter()
            .map(|f| (f.0, levels - level))
            .collect();
        for n in &self.nodes[start..] {
            pending.extend(sh.children(n).iter().map(|&c| (c, rem)));
        }
        let rest = sh.lb.pending(&pending, through);

        if min_id == 0 && (nontrivial || i + 1 < frontier.len()) {
            pending.push((x, rem));
            if partial + sh.lb.pending(&pending, through) <= max {
                self.nodes.push(Node {
                    orbit: x,
                    choice: Choice::Trivial,
                    level,
                    parent: Some((parent, end)),
                });
                self.assign(level, frontier, i + 1, partial, nontrivial, start)?;
                self.nodes.pop();
            }
            pending.pop();
        }
        for &(key, ei) in &sh.order[rem][x] {
            if partial + key + rest > max {
                break;
            }
            if ei + 1 < min_id {
                continue;
            }
            let e = &sh.catalog[x][ei];
            let base = pending.len();
            pending.extend(e.children.iter().map(|&c| (c, rem)));
            let bound = sh.lb.pending(&pending, through);
            pending.truncate(base);
            if partial + e.index + bound > max {
                continue;
            }
            self.nodes.push(Node {
                orbit: x,
                choice: Choice::Catalog(ei),
                level,
                parent: Some((parent, end)),
            });
            self.assign(level, frontier, i + 1, partial + e.index, true, start)?;
            self.nodes.pop();
        }
        Ok(())
    }

    fn record(&mut self, last_level: usize) -> Result<(), BuildingError> {
        let sh = self.sh;
        let mut levels: Vec<Vec<Arc<ComponentSkeleton>>> = vec![Vec::new(); last_level + 1];
        let mut slot = vec![0usize; self.nodes.len()];
        let mut matchings: Vec<Vec<Matching>> = vec![Vec::new(); last_level];
        for (k, n) in self.nodes.iter().enumerate() {
            slot[k] = levels[n.level].len();
            levels[n.level].push(sh.component(n));
            if let Some((p, e)) = n.parent {
                matchings[n.level - 1].push(Matching {
                    upper: EndSlot {
                        component: slot[p],
                        end: e,
                    },
                    lower: EndSlot {
                        component: slot[k],
                        end: 0,
                    },
                });
            }
        }
        let b = BuildingSkeleton::new(levels.into_iter().map(Level::new).collect(), matchings)?;
        if self.found.contains_key(b.canonical()) {
            return Ok(());
        }
        self.found.insert(b.canonical().to_string(), b);
        if sh.found.fetch_add(1, Ordering::SeqCst) + 1 >= sh.limits.max_buildings {
            sh.halt("building limit");
        }
        Ok(())
    }
}

pub(crate) struct Prepared {
    pub universe: Universe,
    pub catalog: Vec<Vec<Entry>>,
}

pub(crate) fn prepare(
    orbits: &[Arc<RotationData>],
    profile: &GenericityProfile,
    bounds: &EnumerationBounds,
) -> Result<Prepared, BuildingError> {
    bounds.validate()?;
    let universe = Universe::build(orbits, profile, bounds)?;
    let catalog = build_catalog(&universe, orbits, profile, bounds)?;
    Ok(Prepared { universe, catalog })
}

pub(crate) fn search(
    prepared: &Prepared,
    bounds: &EnumerationBounds,
    limits: &EnumerationLimits,
) -> Result<Vec<BuildingSkeleton>, BuildingError> {
    let catalog = &prepared.catalog;
    let lb = LowerBounds::compute(catalog, bounds.max_levels);
    let order: Vec<Vec<Vec<(i64, usize)>>> = (0..bounds.max_levels)
        .map(|r| {
            catalog
                .iter()
                .map(|list| {
                    let mut v: Vec<(i64, usize)> = list
                        .iter()
                        .enumerate()
                        .map(|(i, e)| {
                            let below: Vec<(usize, usize)> =
                                e.children.iter().map(|&c| (c, r)).collect();
                            (e.index + lb.pending(&below, bounds.max_negative_ends), i)
                        })
                        .collect();
                    v.sort();
                    v
                })
                .collect()
        })
        .collect();
    let trivial = prepared
        .universe
        .refs
        .iter()
        .map(|r| ComponentSkeleton::trivial_cylinder(r).map(Arc::new))
        .collect::<Result<Vec<_>, _>>()?;
    let shared = Shared {
        catalog,
        order,
        lb,
        trivial,
        self_ids: (0..catalog.len()).collect(),
        bounds: *bounds,
        limits: *limits,
        deadline: limits.time_limit.map(|t| Instant::now() + t),
        found: AtomicUsize::new(0),
        stop: AtomicBool::new(false),
        reason: std::sync::Mutex::new(None),
    };
    let roots: Vec<(usize, usize)> = catalog
        .iter()
        .enumerate()
        .flat_map(|(x, list)| (0..list.len()).map(move |i| (x, i)))
        .collect();
    let parts: Vec<Result<BTreeMap<String, BuildingSkeleton>, BuildingError>> = roots
        .par_iter()
        .map(|&(x, i)| Task::run(&shared, x, i))
        .collect();
    let mut all = BTreeMap::new();
    for p in parts {
        all.extend(p?);
    }
    let out: Vec<BuildingSkeleton> = all.into_values().collect();
    if shared.stop.load(Ordering::SeqCst) {
        let reason = shared
            .reason
            .lock()
            .expect("reason lock")
            .clone()
            .unwrap_or_default();
        return Err(BuildingError::EnumerationLimit {
            reason,
            partial: out,
        });
    }
    Ok(out)
}

/// Every component other than a trivial cylinder that the enumerator may
/// place in a building, sorted by canonical form.
pub fn component_catalog(
    orbits: &[Arc<RotationData>],
    profile: &GenericityProfile,
    bounds: &EnumerationBounds,
) -> Result<Vec<Arc<ComponentSkeleton>>, BuildingError> {
    let p = prepare(orbits, profile, bounds)?;
    let mut v: Vec<Arc<ComponentSkeleton>> =
        p.catalog.into_iter().flatten().map(|e| e.comp).collect();
    v.sort_by_key(|c| c.canonical());
    Ok(v)
}

/// All genus-zero buildings with one positive end, at most
/// `max_negative_ends` negative ends and index at most `max_index`, sorted
/// by canonical form. Every level contains a component that is not a
/// trivial cylinder.
pub fn enumerate_buildings(
    orbits: &[Arc<RotationData>],
    profile: &GenericityProfile,
    bounds: &EnumerationBounds,
) -> Result<Vec<BuildingSkeleton>, BuildingError> {
    enumerate_buildings_with_limits(orbits, profile, bounds, &EnumerationLimits::default())
}

pub fn enumerate_buildings_with_limits(
    orbits: &[Arc<RotationData>],
    profile: &GenericityProfile,
    bounds: &EnumerationBounds,
    limits: &EnumerationLimits,
) -> Result<Vec<BuildingSkeleton>, BuildingError> {
    let p = prepare(orbits, profile, bounds)?;
    search(&p, bounds, limits)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaViolation {
    pub lemma: &'static str,
    pub component: String,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LemmaSuiteReport {
    pub components_checked: usize,
    pub checks_run: BTreeMap<&'static str, usize>,
    pub violations: Vec<LemmaViolation>,
}

impl LemmaSuiteReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(
        &mut self,
        lemma: &'static str,
        comp: &ComponentSkeleton,
        outcome: Result<bool, BuildingError>,
    ) {
        *self.checks_run.entry(lemma).or_default() += 1;
        let detail = match outcome {
            Ok(true) => return,
            Ok(false) => match comp.component_index() {
                Ok(ind) => format!("inequality fails (ind = {ind})"),
                Err(e) => e.to_string(),
            },
            Err(e) => e.to_string(),
        };
        self.violations.push(LemmaViolation {
            lemma,
            component: comp.canonical(),
            detail,
        });
    }
}

/// Runs the index inequalities on every catalog component and every
/// trivial cylinder in range.
pub fn lemma_suite(
    orbits: &[Arc<RotationData>],
    profile: &GenericityProfile,
    bounds: &EnumerationBounds,
) -> Result<LemmaSuiteReport, BuildingError> {
    let p = prepare(orbits, profile, bounds)?;
    let mut comps: Vec<Arc<ComponentSkeleton>> = p
        .universe
        .refs
        .iter()
        .map(|r| ComponentSkeleton::trivial_cylinder(r).map(Arc::new))
        .collect::<Result<_, _>>()?;
    comps.extend(p.catalog.into_iter().flatten().map(|e| e.comp));
    let mut report = LemmaSuiteReport {
        components_checked: comps.len(),
        ..Default::default()
    };
    for c in &comps {
        report.record("riemann-hurwitz", c, c.validate().map(|_| true));
        if c.kind == ComponentKind::BranchedCoverOfTrivialCylinder {
            report.record("nonnegative-trivial-cover", c, c.check_ht_lemma());
        }
        report.record("branching-estimate", c, c.check_bestimate());
        report.record("pants-estimate", c, c.check_fati());
        if profile.generic_j {
            report.record("cylinder-and-five", c, c.check_cyl_and_5_estimates(profile));
            if c.is_cylinder() && c.kind != ComponentKind::BranchedCoverOfTrivialCylinder {
                report.record(
                    "cylinder-cover-index",
                    c,
                    c.check_cylinder_cover_index(profile),
                );
            }
        }
    }
    Ok(report)
}
