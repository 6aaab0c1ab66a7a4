//! Seeded corpora of transformation semigroups and homomorphism enumeration.
//!
//! Random Cayley tables are almost never associative, so test semigroups
//! are generated as subsemigroups of the full transformation monoid on at
//! most four points, closed under composition.

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::semigroup::{is_nice_subsemigroup, FiniteSemigroup};
use crate::subset::SubsetQuery;
use crate::Verdict;

/// Largest number of points the generating transformations act on.
pub const MAX_DEGREE: usize = 4;
const MAX_GENERATORS: usize = 3;
const ATTEMPTS_PER_ENTRY: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub semigroup: FiniteSemigroup,
    pub degree: usize,
    /// `transformations[i]` is the action of element `i` on `0..degree`.
    pub transformations: Vec<Vec<u8>>,
}

/// `a • b` acts as "first `a`, then `b`".
fn then(a: &[u8], b: &[u8]) -> Vec<u8> {
    a.iter().map(|&x| b[x as usize]).collect()
}

/// Closure of `gens` under composition, or `None` once it exceeds `max_order`.
fn close(gens: &[Vec<u8>], max_order: usize) -> Option<Vec<Vec<u8>>> {
    let mut elems: Vec<Vec<u8>> = Vec::new();
    let mut seen = HashSet::new();
    for g in gens {
        if seen.insert(g.clone()) {
            elems.push(g.clone());
        }
    }
    let mut i = 0;
    while i < elems.len() {
        if elems.len() > max_order {
            return None;
        }
        for g in gens {
            let p = then(&elems[i], g);
            if seen.insert(p.clone()) {
                elems.push(p);
            }
        }
        i += 1;
    }
    (elems.len() <= max_order).then_some(elems)
}

fn table_of(elems: &[Vec<u8>]) -> FiniteSemigroup {
    let index: HashMap<&[u8], usize> = elems.iter().enumerate().map(|(i, e)| (e.as_slice(), i)).collect();
    let n = elems.len();
    let sg = FiniteSemigroup::from_fn(n, |a, b| index[then(&elems[a], &elems[b]).as_slice()])
        .expect("composition of transformations is associative");
    let labels = elems
        .iter()
        .map(|e| e.iter().map(|x| char::from(b'0' + x)).collect())
        .collect();
    sg.with_labels(labels).expect("one label per element")
}

/// Largest order for which entries are deduplicated up to isomorphism.
const ISOMORPHISM_KEY_LIMIT: usize = 7;

/// Lexicographically least Cayley table over all relabelings, so two
/// semigroups share a key iff they are isomorphic. Above the limit the
/// table itself is the key.
fn isomorphism_key(sg: &FiniteSemigroup) -> Vec<usize> {
    let n = sg.order();
    if n > ISOMORPHISM_KEY_LIMIT {
        return sg.table().to_vec();
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = sg.table().to_vec();
    let mut candidate = vec![0; n * n];
    let mut relabel = |p: &[usize]| {
        for a in 0..n {
            for b in 0..n {
                candidate[p[a] * n + p[b]] = p[sg.mul(a, b)];
            }
        }
        if candidate < best {
            best.copy_from_slice(&candidate);
        }
    };
    // Heap's algorithm
    let mut c = vec![0; n];
    relabel(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            perm.swap(if i % 2 == 0 { 0 } else { c[i] }, i);
            relabel(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}

/// `count` pairwise non-isomorphic transformation semigroups of order
/// `<= max_order`, determined entirely by `seed`.
///
/// Orders above 7 are only deduplicated by Cayley table. Fewer than `count`
/// entries are returned only when the attempt budget runs out, which
/// happens for very small `max_order`.
pub fn transformation_corpus(max_order: usize, count: usize, seed: u64) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    for _ in 0..count * ATTEMPTS_PER_ENTRY {
        if out.len() == count {
            break;
        }
        let degree = rng.gen_range(1..=MAX_DEGREE);
        let ngens = rng.gen_range(1..=MAX_GENERATORS);
        let gens: Vec<Vec<u8>> = (0..ngens)
            .map(|_| (0..degree).map(|_| rng.gen_range(0..degree as u8)).collect())
            .collect();
        let Some(elems) = close(&gens, max_order) else {
            continue;
        };
        let semigroup = table_of(&elems);
        if !seen.insert(isomorphism_key(&semigroup)) {
            continue;
        }
        out.push(CorpusEntry {
            semigroup,
            degree,
            transformations: elems,
        });
    }
    out
}

/// A generating set chosen greedily in index order, with, for every
/// non-generator element, a factorization `element = parent • generator`
/// where `parent` entered the closure no later than the element.
struct Presentation {
    generators: Vec<usize>,
    /// `stage[e]`: number of generators needed before `e` is reachable.
    stage: Vec<usize>,
    /// Elements in the order they were reached, with their factorization.
    order: Vec<(usize, Option<(usize, usize)>)>,
}

fn presentation(sg: &FiniteSemigroup) -> Presentation {
    let n = sg.order();
    let mut stage = vec![usize::MAX; n];
    let mut generators = Vec::new();
    let mut order = Vec::new();
    for candidate in sg.elements() {
        if stage[candidate] != usize::MAX {
            continue;
        }
        generators.push(candidate);
        let k = generators.len();
        stage[candidate] = k;
        order.push((candidate, None));
        let mut queue: Vec<usize> = (0..n).filter(|&e| stage[e] <= k).collect();
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            for &g in &generators {
                let p = sg.mul(e, g);
                if stage[p] == usize::MAX {
                    stage[p] = k;
                    order.push((p, Some((e, g))));
                    queue.push(p);
                }
            }
            i += 1;
        }
    }
    Presentation {
        generators,
        stage,
        order,
    }
}

/// All homomorphisms `domain → target`, by backtracking on the images of a
/// generating set. After each generator is assigned, the map is extended
/// over the subsemigroup generated so far and checked there.
pub fn homomorphisms(domain: &FiniteSemigroup, target: &FiniteSemigroup) -> Vec<Vec<usize>> {
    let pres = presentation(domain);
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; domain.order()];
    extend(domain, target, &pres, 0, &mut map, &mut out);
    out
}

pub fn endomorphisms(sg: &FiniteSemigroup) -> Vec<Vec<usize>> {
    homomorphisms(sg, sg)
}

fn extend(
    domain: &FiniteSemigroup,
    target: &FiniteSemigroup,
    pres: &Presentation,
    level: usize,
    map: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if level == pres.generators.len() {
        out.push(map.clone());
        return;
    }
    let stage = level + 1;
    let members: Vec<usize> = domain.elements().filter(|&e| pres.stage[e] <= stage).collect();
    for image in target.elements() {
        map[pres.generators[level]] = image;
        for &(e, fact) in &pres.order {
            if pres.stage[e] == stage {
                if let Some((p, g)) = fact {
                    map[e] = target.mul(map[p], map[g]);
                }
            }
        }
        let consistent = members
            .iter()
            .all(|&a| members.iter().all(|&b| map[domain.mul(a, b)] == target.mul(map[a], map[b])));
        if consistent {
            extend(domain, target, pres, level + 1, map, out);
        }
    }
    for &(e, _) in &pres.order {
        if pres.stage[e] == stage {
            map[e] = usize::MAX;
        }
    }
}

/// Proper nice subsemigroups of `sg`, in mask order. Exhaustive, so
/// `sg.order()` must be at most [`crate::SubsetQuery`]'s enumeration limit.
pub fn nice_subsemigroups(sg: &FiniteSemigroup) -> Vec<SubsetQuery> {
    SubsetQuery::all_subsets(sg.order())
        .filter(|t| !t.is_empty() && t.count() < sg.order())
        .filter(|t| matches!(is_nice_subsemigroup(sg, t), Ok(Verdict::Pass)))
        .collect()
}

/// Every retraction of `sg` onto `t`: endomorphisms with range in `t`
/// that fix `t` pointwise.
pub fn retractions_onto(sg: &FiniteSemigroup, t: &SubsetQuery) -> Vec<Vec<usize>> {
    endomorphisms(sg)
        .into_iter()
        .filter(|f| f.iter().all(|&y| t.contains(y)) && t.iter().all(|x| f[x] == x))
        .collect()
}
