//! Order-two elements of the exceptional adjoint groups via affinize-and-delete
//! on the extended diagram of the dual root system.
//!
//! Nodes are numbered as in the group `G`: node `k >= 1` is the simple coroot
//! `alpha_k^vee` (a simple root of the dual system) and node `0` is the negative
//! of the dual highest root.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{identify, type_label, CartanType, Family, RootSystem};

/// Extended Dynkin diagram of a root system.
#[derive(Clone, Debug)]
pub struct AffineDiagram {
    pub rs: RootSystem,
    /// Node roots in simple-root coordinates of `rs`; node 0 is `-highest`.
    pub nodes: Vec<Vec<i64>>,
    /// Extended Cartan matrix `<beta_a, beta_b^vee>`.
    pub cartan: Vec<Vec<i64>>,
    /// Highest-root coefficients, with 1 for node 0.
    pub marks: Vec<i64>,
}

impl AffineDiagram {
    pub fn new(rs: &RootSystem) -> Self {
        let r = rs.rank();
        let mut nodes = vec![rs.highest.iter().map(|x| -x).collect::<Vec<_>>()];
        for i in 0..r {
            let mut v = vec![0; r];
            v[i] = 1;
            nodes.push(v);
        }
        let cartan = nodes
            .iter()
            .map(|a| nodes.iter().map(|b| pair_roots(rs, a, b)).collect())
            .collect();
        let mut marks = vec![1];
        marks.extend(rs.highest.iter().copied());
        AffineDiagram {
            rs: rs.clone(),
            nodes,
            cartan,
            marks,
        }
    }

    /// The extended diagram of the dual system, in the group's numbering.
    pub fn dual_of(group: &RootSystem) -> Self {
        AffineDiagram::new(&group.dual())
    }

    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    /// Nodes adjacent to node 0.
    pub fn neighbours_of_zero(&self) -> Vec<usize> {
        (1..self.size())
            .filter(|&j| self.cartan[0][j] != 0)
            .collect()
    }

    /// Cartan matrix restricted to a set of nodes.
    pub fn restrict(&self, keep: &[usize]) -> Vec<Vec<i64>> {
        keep.iter()
            .map(|&a| keep.iter().map(|&b| self.cartan[a][b]).collect())
            .collect()
    }
}

/// `<a, b^vee>` for roots in simple-root coordinates.
fn pair_roots(rs: &RootSystem, a: &[i64], b: &[i64]) -> i64 {
    let c = rs.coroot_of(&b.iter().map(|x| x.abs()).collect::<Vec<_>>());
    let sign = if b.iter().any(|&x| x < 0) { -1 } else { 1 };
    let v: i64 = (0..rs.rank())
        .map(|j| rs.root_pair_simple(a, j) * c[j])
        .sum();
    sign * v
}

/// One conjugacy class of order-two elements.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct OrderTwoClass {
    pub group: String,
    /// Deleted nodes of the extended dual diagram (0 is the affine node).
    pub deleted: Vec<usize>,
    pub undeleted: Vec<usize>,
    /// Components of the fixed subalgebra: type and its nodes in Bourbaki order.
    pub components: Vec<(CartanType, Vec<usize>)>,
    /// e.g. `so9`, `e7+sl2`, `so10+a`.
    pub fixed_type: String,
    pub is_levi: bool,
    /// Exponents `e_j` in Z/4 of the lift `prod_j h_{alpha_j}(i^{e_j})`.
    pub lift: Option<Vec<u8>>,
}

impl OrderTwoClass {
    /// The single deleted node of a non-Levi class.
    pub fn deleted_node(&self) -> Option<usize> {
        (self.deleted.len() == 1).then(|| self.deleted[0])
    }
}

/// Fixed-subalgebra name from component types, largest rank first.
pub fn algebra_label(types: &[CartanType], levi: bool) -> String {
    let mut v = types.to_vec();
    v.sort_by(|a, b| b.rank.cmp(&a.rank).then(a.family.cmp(&b.family)));
    let mut parts: Vec<String> = v.iter().map(|t| t.algebra_name()).collect();
    if levi {
        parts.push("a".into());
    }
    parts.join("+")
}

/// Torus lifts `prod h_{alpha_j}(i^{e_j})` for each class, in the group's numbering.
pub fn embedded_lift(group: &str, fixed_type: &str) -> Option<Vec<u8>> {
    let e: &[u8] = match (group, fixed_type) {
        ("G2", "sl2+sl2") => &[2, 0],
        ("F4", "sp6+sl2") => &[0, 2, 0, 2],
        ("F4", "so9") => &[0, 0, 2, 0],
        ("E6", "so10+a") => &[0, 2, 0, 0, 2, 0],
        ("E6", "sl6+sl2") => &[2, 0, 0, 2, 0, 2],
        ("E7", "e6+a") => &[2, 1, 0, 2, 3, 0, 1],
        ("E7", "sl8") => &[0, 1, 0, 0, 3, 2, 1],
        ("E7", "so12+sl2") => &[0, 2, 2, 0, 0, 0, 0],
        ("E8", "so16") => &[0, 2, 2, 0, 0, 0, 0, 0],
        ("E8", "e7+sl2") => &[0, 2, 0, 0, 2, 0, 2, 0],
        _ => return None,
    };
    Some(e.to_vec())
}

/// Preference among deletions giving the same class: single deletions keep the
/// smallest node; double deletions prefer one containing node 0 and then the
/// largest other node.
fn preference(deleted: &[usize]) -> (usize, i64) {
    match deleted {
        [k] => (0, *k as i64),
        [0, k] => (0, -(*k as i64)),
        [a, b] => (1, -((a * 100 + b) as i64)),
        _ => (2, 0),
    }
}

/// All classes of order-two elements of the adjoint dual group of an exceptional type.
pub fn classify_order_two(t: CartanType) -> Result<Vec<OrderTwoClass>> {
    if !t.is_exceptional() {
        return Err(Error::UnknownType(format!("{t} is not exceptional")));
    }
    let group = RootSystem::new(t)?;
    let aff = AffineDiagram::dual_of(&group);
    let n = aff.size();
    let mut deletions: Vec<Vec<usize>> = Vec::new();
    for k in 0..n {
        if aff.marks[k] == 2 {
            deletions.push(vec![k]);
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            if aff.marks[a] == 1 && aff.marks[b] == 1 {
                deletions.push(vec![a, b]);
            }
        }
    }
    let mut out: Vec<OrderTwoClass> = Vec::new();
    for del in deletions {
        let undeleted: Vec<usize> = (0..n).filter(|k| !del.contains(k)).collect();
        let sub = aff.restrict(&undeleted);
        let comps =
            identify(&sub).ok_or_else(|| Error::InvalidCartan(format!("{t} minus {del:?}")))?;
        let components: Vec<(CartanType, Vec<usize>)> = comps
            .into_iter()
            .map(|(ct, nodes)| (ct, nodes.iter().map(|&i| undeleted[i]).collect()))
            .collect();
        let is_levi = del.len() == 2;
        let types: Vec<CartanType> = components.iter().map(|c| c.0).collect();
        let fixed_type = algebra_label(&types, is_levi);
        let cls = OrderTwoClass {
            group: t.to_string(),
            lift: embedded_lift(&t.to_string(), &fixed_type),
            deleted: del,
            undeleted,
            components,
            fixed_type,
            is_levi,
        };
        match out
            .iter_mut()
            .find(|c| c.fixed_type == cls.fixed_type && c.is_levi == cls.is_levi)
        {
            Some(existing) => {
                if preference(&cls.deleted) < preference(&existing.deleted) {
                    *existing = cls;
                }
            }
            None => out.push(cls),
        }
    }
    out.sort_by_key(|c| (!c.is_levi, c.deleted.clone()));
    Ok(out)
}

/// Result of checking a torus lift against its class.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct LiftReport {
    pub group: String,
    pub fixed_type: String,
    pub ok: bool,
    /// Type of the subsystem on which the lift acts by +1.
    pub plus_one_type: String,
    pub plus_one_roots: usize,
    /// `e`, `z` or `z^2`: the square of the lift as a central element.
    pub square: String,
    pub message: String,
}

/// Center of the simply connected group as exponent vectors in Z/12
/// (`omega = 4`, `-1 = 6`), generator first.
fn center_generator(t: &CartanType) -> Option<Vec<u32>> {
    match (t.family, t.rank) {
        (Family::E, 6) => Some(vec![4, 0, 8, 0, 4, 8]),
        (Family::E, 7) => Some(vec![0, 6, 0, 0, 6, 0, 6]),
        _ => None,
    }
}

/// Checks that the lift acts by `±1` on every root space, that the `+1` roots
/// form a subsystem of the claimed type, and that its square is central.
pub fn verify_torus_lift(cls: &OrderTwoClass) -> Result<LiftReport> {
    let t: CartanType = cls.group.parse()?;
    let g = RootSystem::new(t)?;
    let e = cls
        .lift
        .clone()
        .ok_or_else(|| Error::Mismatch(format!("no lift for {}", cls.fixed_type)))?;
    let mut report = LiftReport {
        group: cls.group.clone(),
        fixed_type: cls.fixed_type.clone(),
        ok: false,
        plus_one_type: String::new(),
        plus_one_roots: 0,
        square: String::new(),
        message: String::new(),
    };
    let mut plus = Vec::new();
    for (k, a) in g.pos.iter().enumerate() {
        let phase: i64 = (0..g.rank())
            .map(|j| e[j] as i64 * g.root_pair_simple(a, j))
            .sum::<i64>()
            .rem_euclid(4);
        match phase {
            0 => plus.push(k),
            2 => {}
            _ => {
                report.message = format!("root {a:?} has phase i^{phase}");
                return Ok(report);
            }
        }
    }
    report.plus_one_roots = plus.len();
    let (c, _) = crate::rootsys::subsystem_base(&g, &plus);
    let types: Vec<CartanType> = match identify(&c) {
        Some(v) => v.into_iter().map(|x| x.0).collect(),
        None => {
            report.message = "+1 roots do not form a recognisable subsystem".into();
            return Ok(report);
        }
    };
    report.plus_one_type = type_label(&types);
    let claimed: Vec<CartanType> = cls.components.iter().map(|c| c.0).collect();
    let rank_ok = types.iter().map(|t| t.rank).sum::<usize>()
        == claimed.iter().map(|t| t.rank).sum::<usize>();
    if type_label(&types) != type_label(&claimed) || !rank_ok {
        report.message = format!(
            "+1 subsystem is {} but the class claims {}",
            type_label(&types),
            type_label(&claimed)
        );
        return Ok(report);
    }
    // Square as a Z/12 exponent vector.
    let sq: Vec<u32> = e.iter().map(|&x| (2 * 3 * x as u32) % 12).collect();
    report.square = if sq.iter().all(|&x| x == 0) {
        "e".into()
    } else if let Some(z) = center_generator(&t) {
        let z2: Vec<u32> = z.iter().map(|x| (2 * x) % 12).collect();
        if sq == z {
            "z".into()
        } else if sq == z2 {
            "z^2".into()
        } else {
            report.message = format!("square {sq:?} is not central");
            return Ok(report);
        }
    } else {
        report.message = format!("square {sq:?} is not trivial");
        return Ok(report);
    };
    report.ok = true;
    Ok(report)
}

/// Expected classes: (group, fixed type, Levi, deleted nodes).
pub const EXPECTED_CLASSES: &[(&str, &str, bool, &[usize])] = &[
    ("G2", "sl2+sl2", false, &[1]),
    ("F4", "sp6+sl2", false, &[4]),
    ("F4", "so9", false, &[1]),
    ("E6", "so10+a", true, &[0, 6]),
    ("E6", "sl6+sl2", false, &[2]),
    ("E7", "e6+a", true, &[0, 7]),
    ("E7", "sl8", false, &[2]),
    ("E7", "so12+sl2", false, &[1]),
    ("E8", "so16", false, &[1]),
    ("E8", "e7+sl2", false, &[8]),
];

pub const EXCEPTIONAL: [&str; 5] = ["G2", "F4", "E6", "E7", "E8"];

/// JSON record for one class.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ClassRecord {
    pub group: String,
    pub fixed_type: String,
    pub is_levi: bool,
    pub deleted_nodes: Vec<usize>,
    pub lift_exponents: Option<Vec<u8>>,
}

impl From<&OrderTwoClass> for ClassRecord {
    fn from(c: &OrderTwoClass) -> Self {
        ClassRecord {
            group: c.group.clone(),
            fixed_type: c.fixed_type.clone(),
            is_levi: c.is_levi,
            deleted_nodes: c.deleted.clone(),
            lift_exponents: c.lift.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classes(t: &str) -> Vec<OrderTwoClass> {
        classify_order_two(t.parse().unwrap()).unwrap()
    }

    #[test]
    fn node_zero_has_one_neighbour() {
        for t in EXCEPTIONAL {
            let aff = AffineDiagram::dual_of(&RootSystem::parse(t).unwrap());
            assert_eq!(aff.neighbours_of_zero().len(), 1, "{t}");
        }
    }

    #[test]
    fn dual_marks() {
        let cases: [(&str, &[i64]); 3] = [
            ("G2", &[1, 2, 3]),
            ("F4", &[1, 2, 4, 3, 2]),
            ("E8", &[1, 2, 3, 4, 6, 5, 4, 3, 2]),
        ];
        for (t, m) in cases {
            assert_eq!(
                AffineDiagram::dual_of(&RootSystem::parse(t).unwrap()).marks,
                m,
                "{t}"
            );
        }
    }

    #[test]
    fn table_rows() {
        let mut got = Vec::new();
        for t in EXCEPTIONAL {
            for c in classes(t) {
                got.push((
                    c.group.clone(),
                    c.fixed_type.clone(),
                    c.is_levi,
                    c.deleted.clone(),
                ));
            }
        }
        let mut want: Vec<_> = EXPECTED_CLASSES
            .iter()
            .map(|(g, f, l, d)| (g.to_string(), f.to_string(), *l, d.to_vec()))
            .collect();
        got.sort();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn lifts_verify() {
        for t in EXCEPTIONAL {
            for c in classes(t) {
                let rep = verify_torus_lift(&c).unwrap();
                assert!(rep.ok, "{t} {}: {}", c.fixed_type, rep.message);
            }
        }
    }

    #[test]
    fn e7_levi_lift_squares_to_center() {
        let c = classes("E7").into_iter().find(|c| c.is_levi).unwrap();
        assert_eq!(verify_torus_lift(&c).unwrap().square, "z");
    }

    #[test]
    fn so9_lift_fixes_b4() {
        let c = classes("F4")
            .into_iter()
            .find(|c| c.fixed_type == "so9")
            .unwrap();
        assert_eq!(verify_torus_lift(&c).unwrap().plus_one_type, "B4");
    }

    #[test]
    fn trivial_lift_is_rejected() {
        let mut c = classes("F4").remove(0);
        c.lift = Some(vec![0; 4]);
        let rep = verify_torus_lift(&c).unwrap();
        assert!(!rep.ok);
        assert_eq!(rep.plus_one_roots, 24);
    }
}
