use std::sync::OnceLock;

use pgfig_core::collineation::{
    norm_identity_check, phi_line, phi_point, point_type, psi_point, st_elements,
};
use pgfig_core::field::Elem;
use pgfig_core::maps::{mu_line, mu_pt};
use pgfig_core::{ObjType, Plane};
use proptest::prelude::*;

const QS: [u64; 6] = [3, 4, 5, 7, 8, 9];

fn plane(i: usize) -> &'static Plane {
    static PLANES: [OnceLock<Plane>; 6] = [const { OnceLock::new() }; 6];
    PLANES[i].get_or_init(|| Plane::from_q(QS[i]).unwrap())
}

fn elem(pg: &Plane, raw: u32) -> Elem {
    pg.field().from_raw(raw % pg.field().size())
}

fn triple(pg: &Plane, r: [u32; 3]) -> [Elem; 3] {
    r.map(|x| elem(pg, x))
}

fn nonzero_triple(pg: &Plane, r: [u32; 3]) -> [Elem; 3] {
    let mut t = triple(pg, r);
    if t.iter().all(|e| e.is_zero()) {
        t[0] = Elem::ONE;
    }
    t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn field_ring_axioms(i in 0..QS.len(), a: u32, b: u32, c: u32) {
        let pg = plane(i);
        let f = pg.field();
        let (a, b, c) = (elem(pg, a), elem(pg, b), elem(pg, c));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
        prop_assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
        }
    }

    #[test]
    fn frobenius_and_norm(i in 0..QS.len(), a: u32, b: u32) {
        let pg = plane(i);
        let f = pg.field();
        let (a, b) = (elem(pg, a), elem(pg, b));
        let q = f.q() as u64;
        prop_assert_eq!(f.frob(a, 1), f.pow(a, q));
        prop_assert_eq!(f.frob(f.add(a, b), 1), f.add(f.frob(a, 1), f.frob(b, 1)));
        prop_assert_eq!(f.frob(f.frob(f.frob(a, 1), 1), 1), a);
        prop_assert_eq!(f.norm(f.mul(a, b)), f.mul(f.norm(a), f.norm(b)));
        prop_assert!(f.in_base_subfield(f.norm(a)));
        prop_assert_eq!(f.norm(a), f.mul(a, f.mul(f.frob(a, 1), f.frob(a, 2))));
    }

    #[test]
    fn canonical_form_is_scalar_invariant(i in 0..QS.len(), r: [u32; 3], s: u32) {
        let pg = plane(i);
        let f = pg.field();
        let t = nonzero_triple(pg, r);
        let lam = f.from_log(s as u64);
        let p = pg.point(t).unwrap();
        let scaled = pg.point(t.map(|x| f.mul(lam, x))).unwrap();
        prop_assert_eq!(p, scaled);
        prop_assert_eq!(pg.point_at(pg.point_index(&p)), p);
    }

    #[test]
    fn join_and_meet_are_incident(i in 0..QS.len(), a: [u32; 3], b: [u32; 3], c: [u32; 3]) {
        let pg = plane(i);
        let p = pg.point(nonzero_triple(pg, a)).unwrap();
        let r = pg.point(nonzero_triple(pg, b)).unwrap();
        prop_assume!(p != r);
        let l = pg.join(&p, &r).unwrap();
        prop_assert!(pg.incident(&p, &l) && pg.incident(&r, &l));
        let m = pg.line(nonzero_triple(pg, c)).unwrap();
        prop_assume!(l != m);
        let x = pg.meet(&l, &m).unwrap();
        prop_assert!(pg.incident(&x, &l) && pg.incident(&x, &m));
    }

    #[test]
    fn phi_has_order_three_and_preserves_incidence(i in 0..QS.len(), a: [u32; 3], b: [u32; 3]) {
        let pg = plane(i);
        let p = pg.point(nonzero_triple(pg, a)).unwrap();
        let l = pg.line(nonzero_triple(pg, b)).unwrap();
        let p3 = phi_point(pg, &phi_point(pg, &phi_point(pg, &p)));
        let l3 = phi_line(pg, &phi_line(pg, &phi_line(pg, &l)));
        prop_assert_eq!(p3, p);
        prop_assert_eq!(l3, l);
        prop_assert_eq!(pg.incident(&p, &l), pg.incident(&phi_point(pg, &p), &phi_line(pg, &l)));
    }

    #[test]
    fn stabiliser_preserves_type(i in 0..QS.len(), a: [u32; 3], k: usize) {
        let pg = plane(i);
        let p = pg.point(nonzero_triple(pg, a)).unwrap();
        let q = QS[i] as usize;
        let t = st_elements(pg).nth(k % (q * q + q + 1)).unwrap();
        let img = psi_point(pg, t, &p).unwrap();
        prop_assert_eq!(point_type(pg, &img), point_type(pg, &p));
    }

    #[test]
    fn norm_identity_on_random_points(i in 0..QS.len(), a: [u32; 3]) {
        let pg = plane(i);
        let f = pg.field();
        let order = f.order() as u64;
        let c = a.map(|x| f.from_log(x as u64 % order));
        let p = pg.point(c).unwrap();
        prop_assert_eq!(norm_identity_check(pg, &p), Ok(true));
    }

    #[test]
    fn mu_is_an_involution(i in 0..QS.len(), a: [u32; 3]) {
        let pg = plane(i);
        let p = pg.point(nonzero_triple(pg, a)).unwrap();
        match point_type(pg, &p) {
            ObjType::III => {
                let l = mu_pt(pg, &p).unwrap();
                prop_assert_eq!(mu_line(pg, &l).unwrap(), p);
            }
            _ => prop_assert!(mu_pt(pg, &p).is_err()),
        }
    }
}
