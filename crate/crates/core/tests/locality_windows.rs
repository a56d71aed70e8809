use qca_lab::ca::{catalog, Region};
use qca_lab::debruijn::lemma_neighborhood;
use qca_lab::locality::{default_window, verify_locality, Verdict};

/// Growing the window beyond the default must not change the verdict.
#[test]
fn verdicts_are_stable_under_window_growth() {
    let cases = [
        (catalog::xor(), Region::single(0), None, Verdict::Verified),
        (catalog::xor(), Region::new([0, 1]), None, Verdict::Verified),
        (catalog::shift(), Region::single(0), None, Verdict::Verified),
        (catalog::identity(), Region::new([0, 3]), None, Verdict::Verified),
        (
            catalog::elementary(30),
            Region::single(0),
            Some(Region::interval(-1, 1)),
            Verdict::Violated,
        ),
        (
            catalog::elementary(30),
            Region::single(0),
            Some(Region::interval(-2, 2)),
            Verdict::Violated,
        ),
    ];
    for (rule, region, n, want) in cases {
        let n = n.unwrap_or_else(|| lemma_neighborhood(&rule, &region).unwrap());
        let (lo, hi) = default_window(&rule, &region, &n).hull().unwrap();
        for extra in 0..=2 {
            let window = Region::interval(lo - extra, hi + extra);
            let r = verify_locality(&rule, &region, &n, Some(&window)).unwrap();
            assert_eq!(
                r.verdict,
                want,
                "{} at {:?}, window +{extra}",
                rule.name(),
                region.cells()
            );
        }
    }
}

/// At a single cell the XOR observable reads `x_0 ⊕ x_1`, so `{0, 1}`
/// suffices and `{−1, 0}` does not.
#[test]
fn xor_single_cell_neighborhoods() {
    let rule = catalog::xor();
    let region = Region::single(0);
    let verdict = |n: Region| verify_locality(&rule, &region, &n, None).unwrap().verdict;
    assert_eq!(verdict(Region::interval(-1, 1)), Verdict::Verified);
    assert_eq!(verdict(Region::interval(0, 1)), Verdict::Verified);
    assert_eq!(verdict(Region::interval(-1, 0)), Verdict::Violated);
    assert_eq!(verdict(Region::single(0)), Verdict::Violated);
}
