use std::time::Instant;
use wordmap_core::big::SLICE_VARS;
use wordmap_core::fricke::{psi_iterate};
use wordmap_core::laurent::LaurentPoly;
use wordmap_core::word::Word;
use wordmap_core::ring::rat_int;

fn main() {
    let w = Word::parse("[y x y^-1, x^-1]", 2).unwrap();
    let map = psi_iterate(&w, 2, 500_000).unwrap();
    let a = rat_int(1);
    let at_a = |poly: &LaurentPoly| {
        poly.subst(&[("t", LaurentPoly::constant(a.clone()))]).unwrap()
            .project(&["s", "u"]).unwrap().embed(&SLICE_VARS)
    };
    let p_at = at_a(&map.p);
    let h1 = p_at.sub(&LaurentPoly::int(2)).sub(&LaurentPoly::var("C", &SLICE_VARS));
    let h2 = at_a(&map.q).sub(&p_at.sub(&LaurentPoly::one())).sub(&LaurentPoly::var("D", &SLICE_VARS));
    eprintln!("h1 terms {} deg_u {:?}, h2 terms {} deg_u {:?}", h1.num_terms(), h1.degree_in("u"), h2.num_terms(), h2.degree_in("u"));
    // specialize C=3, D=5 -> bivariate (s,u)
    let t0 = Instant::now();
    let h1s = h1.subst(&[("C", LaurentPoly::int(3))]).unwrap().project(&["s","u"]).unwrap();
    let h2s = h2.subst(&[("D", LaurentPoly::int(5))]).unwrap().project(&["s","u"]).unwrap();
    let r = wordmap_core::gcd::resultant_prs(&h1s, &h2s, "u").unwrap();
    eprintln!("bivariate PRS: {:?}, R terms {} deg_s {:?}", t0.elapsed(), r.num_terms(), r.degree_in("s"));
}
