use quadzeta::genfun::{head_closed_form, head_mass, head_unimodular};
use quadzeta::padic::FieldDesc;
use quadzeta::quadform::all_classes;

#[test]
fn closed_heads_match_enumeration() {
    for (p, f, max_rank) in [(3, 1, 4), (5, 1, 3), (2, 1, 4), (2, 2, 3)] {
        let field = FieldDesc::new(p, f).unwrap();
        for c in all_classes(&field, max_rank).unwrap() {
            let e = head_unimodular(&c).unwrap();
            let k = head_closed_form(&c).unwrap();
            assert_eq!(e.normalize(), k.normalize(), "{field} {c}");
            assert_eq!(e.mass(), head_mass(&c), "{field} {c}");
        }
    }
}
