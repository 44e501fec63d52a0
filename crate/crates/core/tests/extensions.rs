mod common;

use common::{quiver_and_pair, quivers};
use gentle_ext::corpus::{disk_quivers, qstar_quiver};
use gentle_ext::strings::all_strings;
use gentle_ext::{
    enumerate_crossings, ext_dim, ext_report, find_cycle_completion, smooth_checked, validate_string, Error, Term,
};
use proptest::prelude::*;

fn arrow(q: &gentle_ext::Quiver, x: &str, y: &str) -> usize {
    let (x, y) = (q.vertex_by_label(x).unwrap(), q.vertex_by_label(y).unwrap());
    q.arrows_between(x, y)[0]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn smoothings_are_valid_and_agree_with_snake_graphs((i, a, b) in quiver_and_pair(8)) {
        let q = &quivers()[i];
        for c in enumerate_crossings(q, &a, &b) {
            let (sm, _) = smooth_checked(q, &c).unwrap();
            for t in sm.terms() {
                match t {
                    Term::Module(w) => prop_assert!(validate_string(q, Some(w.start()), &w.letters).is_ok()),
                    Term::Arc { edge, boundary } => {
                        prop_assert_eq!(*boundary, q.triangulation().is_boundary(*edge))
                    }
                    Term::Zero => {}
                }
            }
        }
    }

    #[test]
    fn crossing_counts_respect_inversion((i, a, b) in quiver_and_pair(8)) {
        let q = &quivers()[i];
        let r = ext_report(q, &a, &b).unwrap();
        let ri = ext_report(q, &a.invert(q), &b).unwrap();
        prop_assert_eq!((r.dim_mn, r.dim_nm, r.int), (ri.dim_mn, ri.dim_nm, ri.int));
        let swapped = ext_report(q, &b, &a).unwrap();
        prop_assert_eq!((r.dim_mn, r.dim_nm, r.int), (swapped.dim_nm, swapped.dim_mn, swapped.int));
    }
}

#[test]
fn disks_have_no_self_crossings_and_cross_at_most_once() {
    for (n, q) in disk_quivers().iter().filter(|(n, _)| *n <= 7) {
        let ws = all_strings(q, 8);
        for (i, a) in ws.iter().enumerate() {
            assert!(enumerate_crossings(q, a, a).is_empty(), "{n}-gon: {} crosses itself", a.ascii(q));
            for b in &ws[i + 1..] {
                let r = ext_report(q, a, b).unwrap();
                assert!(r.int <= 1, "{n}-gon: {} and {} cross {} times", a.ascii(q), b.ascii(q), r.int);
            }
        }
    }
}

#[test]
fn cycle_completions_over_qstar() {
    let q = qstar_quiver();
    let c = find_cycle_completion(&q, arrow(&q, "1", "2"), arrow(&q, "2", "7")).unwrap();
    assert_eq!(q.arrow_name(c), "7>1");
    let c = find_cycle_completion(&q, arrow(&q, "6", "3"), arrow(&q, "3", "2")).unwrap();
    assert_eq!(q.arrow_name(c), "2>6");
    let c = find_cycle_completion(&q, arrow(&q, "8", "4"), arrow(&q, "4", "5")).unwrap();
    assert_eq!(q.arrow_name(c), "5>8");
    assert!(matches!(
        find_cycle_completion(&q, arrow(&q, "1", "2"), arrow(&q, "2", "6")),
        Err(Error::Precondition(_))
    ));
    assert!(matches!(
        find_cycle_completion(&q, arrow(&q, "1", "2"), arrow(&q, "4", "3")),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn simple_modules_at_sources_and_sinks() {
    let q = qstar_quiver();
    let s = |l: &str| gentle_ext::parse_string(&q, l).unwrap();
    assert_eq!(ext_dim(&q, &s("7"), &s("1")).unwrap(), 1);
    assert_eq!(ext_dim(&q, &s("1"), &s("7")).unwrap(), 0);
    assert_eq!(ext_dim(&q, &s("1"), &s("1")).unwrap(), 0);
}
