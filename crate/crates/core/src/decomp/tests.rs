use super::*;
use crate::samples;

fn poly(s: &str) -> Polynomial {
    s.parse().unwrap()
}

fn same_function(a: &CommutativeDecomposition, b: &CommutativeDecomposition, max: u64) {
    let k = a.alphabet().len();
    for x in grid(k, max) {
        assert_eq!(a.eval(&x).unwrap(), b.eval(&x).unwrap(), "at {x:?}");
    }
}

fn grid(k: usize, max: u64) -> Vec<Vec<u64>> {
    (0..k).fold(vec![vec![]], |acc, _| {
        acc.into_iter()
            .flat_map(|p| {
                (0..=max).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect()
    })
}

#[test]
fn modulo_types() {
    assert_eq!(ModuloType::all(2, 2).len(), 4 * 4);
    let ty = ModuloType::of(&[5, 1], 2);
    assert_eq!(ty, ModuloType { s: vec![0], r: vec![1, 1] });
    assert_eq!(ty.to_string(), "S{0}r[1,1]");
    assert_eq!(ty.point(2, &[2]), vec![5, 1]);
}

#[test]
fn evaluation_examples() {
    let xy = samples::count_product_decomposition();
    assert_eq!(xy.eval(&[3, 4]).unwrap(), BigInt::from(12));
    assert_eq!(xy.eval(&[0, 0]).unwrap(), BigInt::zero());
    let parity = samples::parity_decomposition();
    assert_eq!(parity.eval(&[4]).unwrap(), BigInt::one());
    assert_eq!(parity.eval(&[3]).unwrap(), BigInt::zero());
    assert_eq!(parity.eval_word("aa").unwrap(), BigInt::one());
    assert!(matches!(parity.eval_word("ab"), Err(Error::UnknownLetter('b'))));
}

#[test]
fn rejects_malformed_pieces() {
    let mut pieces = BTreeMap::new();
    pieces.insert(ModuloType { s: vec![], r: vec![0] }, poly("a"));
    pieces.insert(ModuloType { s: vec![0], r: vec![0] }, poly("a"));
    assert!(CommutativeDecomposition::new(&['a'], 1, pieces).is_err());

    let mut pieces = BTreeMap::new();
    pieces.insert(ModuloType { s: vec![], r: vec![0] }, poly("0"));
    pieces.insert(ModuloType { s: vec![0], r: vec![0] }, poly("1/2*a"));
    assert!(CommutativeDecomposition::new(&['a'], 1, pieces).is_err());

    let mut pieces = BTreeMap::new();
    pieces.insert(ModuloType { s: vec![0], r: vec![0] }, poly("a"));
    assert!(CommutativeDecomposition::new(&['a'], 1, pieces).is_err());
}

#[test]
fn refine_keeps_the_function() {
    let parity = samples::parity_decomposition();
    assert_eq!(parity.refine(1), parity);
    let fine = parity.refine(2);
    assert_eq!(fine.omega(), 4);
    same_function(&parity, &fine, 24);
    let ko = samples::bad_ex_ko();
    same_function(&ko, &ko.refine(4), 36);
    let xy = samples::count_product_decomposition();
    same_function(&xy, &xy.refine(3), 9);
}

#[test]
fn shift_translates_counts() {
    let parity = samples::parity_decomposition();
    assert_eq!(parity.shift(0, 0), parity);
    let shifted = parity.shift(0, 1);
    for n in 0..10 {
        assert_eq!(shifted.eval(&[n]).unwrap(), parity.eval(&[n + 1]).unwrap());
    }
    let full = |r| ModuloType { s: vec![0], r: vec![r] };
    assert_eq!(shifted.piece(&full(0)), parity.piece(&full(1)));
    assert_eq!(shifted.piece(&full(1)), parity.piece(&full(0)));

    let ko = samples::bad_ex_ko();
    for n in 0..8 {
        let s = ko.shift(0, n);
        for x in 0..20 {
            assert_eq!(s.eval(&[x]).unwrap(), ko.eval(&[x + n]).unwrap());
        }
    }
}

#[test]
fn subtraction_is_pointwise() {
    let parity = samples::parity_decomposition();
    assert!(parity.sub(&parity).unwrap().is_zero());
    let one = CommutativeDecomposition::constant(&['a'], BigInt::one()).unwrap();
    let d = parity.sub(&one).unwrap();
    assert_eq!(d.omega(), 2);
    for n in 0..10 {
        let expected = parity.eval(&[n]).unwrap() - 1;
        assert_eq!(d.eval(&[n]).unwrap(), expected);
    }
    let other = CommutativeDecomposition::constant(&['b'], BigInt::one()).unwrap();
    assert!(matches!(parity.sub(&other), Err(Error::AlphabetMismatch(..))));
}

#[test]
fn degrees() {
    assert_eq!(CommutativeDecomposition::constant(&['a'], BigInt::from(4)).unwrap().degree(), 0);
    assert_eq!(samples::count_product_decomposition().degree(), 2);
    assert_eq!(samples::parity_decomposition().degree(), 0);
    assert_eq!(samples::bad_ex_ko().degree(), 1);
}

#[test]
fn npoly_examples() {
    let square = CommutativeDecomposition::from_polynomial(&['a', 'b'], &poly("(a - b)^2")).unwrap();
    let report = square.is_npoly(None).unwrap();
    assert!(report.verdict.is_no());
    assert!(matches!(report.certificate, Certificate::Piece { .. }));

    let xy = samples::count_product_decomposition();
    assert!(xy.is_npoly(None).unwrap().verdict.is_yes());
    assert!(xy.is_npoly(Some(2)).unwrap().verdict.is_yes());
    let low = xy.is_npoly(Some(1)).unwrap();
    assert_eq!(low.certificate, Certificate::Degree { actual: 2, bound: 1 });

    let negative = CommutativeDecomposition::constant(&['a'], BigInt::from(-1)).unwrap();
    assert!(negative.is_npoly(None).unwrap().verdict.is_no());

    assert!(samples::bad_ex_ko().is_npoly(Some(1)).unwrap().verdict.is_yes());
    assert!(samples::bad_ex_ok().is_npoly(Some(1)).unwrap().verdict.is_yes());
}

#[test]
fn ultimately_polynomial_examples() {
    let parity = samples::parity_decomposition();
    let up = parity.is_ultimately_polynomial();
    assert!(up.verdict.is_no());
    assert!(matches!(up.certificate, Certificate::Gluing { .. }));
    assert!(parity.is_zsf().verdict.is_no());

    let ko = samples::bad_ex_ko();
    assert!(ko.is_ultimately_polynomial().verdict.is_yes());
    assert!(ko.is_nsf().unwrap().verdict.is_yes());

    let xy = samples::count_product_decomposition();
    assert!(xy.is_ultimately_polynomial().verdict.is_yes());
    assert!(xy.is_nsf().unwrap().verdict.is_yes());
    assert!(xy.is_zsf().verdict.is_yes());

    let ok = samples::bad_ex_ok();
    assert!(ok.is_ultimately_polynomial().verdict.is_yes());
}

#[test]
fn interpolation_recovers_pieces() {
    let d = CommutativeDecomposition::interpolate(&['a', 'b'], 1, 2, |x| {
        Ok(BigInt::from(x[0] * x[1]))
    })
    .unwrap();
    same_function(&d, &samples::count_product_decomposition(), 8);
}

#[test]
fn synthesis_examples() {
    let c = CommutativeDecomposition::constant(&['a', 'b'], BigInt::from(5)).unwrap();
    let a = synthesize_automaton(&c).unwrap();
    assert_eq!(a.dim(), 1);
    assert_eq!(a.evaluate("abba").unwrap(), BigInt::from(5));

    let parity = synthesize_automaton(&samples::parity_decomposition()).unwrap();
    assert_eq!(parity.dim(), 2);
    let values: Vec<BigInt> = (0..6).map(|n| parity.evaluate(&"a".repeat(n)).unwrap()).collect();
    assert_eq!(values, [1, 0, 1, 0, 1, 0].map(BigInt::from));

    for d in [samples::bad_ex_ok(), samples::bad_ex_ko(), samples::count_product_decomposition()] {
        let a = synthesize_automaton(&d).unwrap();
        for x in grid(d.alphabet().len(), 7) {
            assert_eq!(a.evaluate_counts(&x).unwrap(), d.eval(&x).unwrap());
        }
    }
}

#[test]
fn synthesis_respects_dimension_limit() {
    let d = samples::bad_ex_ko().refine(10);
    assert!(matches!(
        synthesize_automaton_with_limit(&d, 4),
        Err(Error::TooLarge(_))
    ));
}

#[test]
fn decompose_examples() {
    let limits = Limits::default();
    let found = |a: &crate::automaton::WeightedAutomaton| match decompose(a, &limits).unwrap() {
        DecomposeOutcome::Found(d) => d,
        DecomposeOutcome::Inconclusive(r) => panic!("inconclusive: {r}"),
    };
    let xy = found(&samples::count_product());
    assert_eq!(xy.omega(), 1);
    assert_eq!(*xy.piece(&ModuloType { s: vec![0, 1], r: vec![0, 0] }), poly("a*b"));

    let five = found(&samples::constant(&['a', 'b'], 5));
    assert_eq!(five.omega(), 1);
    assert!(five.pieces().values().all(|p| *p == Polynomial::int(5)));

    let alt = found(&samples::alternating_length());
    assert_eq!(alt.omega(), 2);
    for ty in alt.pieces().keys().filter(|t| !t.s.is_empty()) {
        assert_eq!(alt.piece(ty).total_degree(), 1);
    }

    let parity = found(&samples::parity());
    assert_eq!(parity.omega(), 2);

    assert!(matches!(
        decompose(&samples::first_letter_indicator(), &limits),
        Err(Error::NotCommutative(..))
    ));
}

#[test]
fn decompose_can_give_up() {
    let limits = Limits {
        max_omega: 1,
        ..Limits::default()
    };
    assert!(matches!(
        decompose(&samples::parity(), &limits).unwrap(),
        DecomposeOutcome::Inconclusive(_)
    ));
}
