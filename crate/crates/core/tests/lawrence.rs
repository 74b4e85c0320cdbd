mod common;

use common::{fixture, lawrence};
use jssp_bio::io::{bks_lookup, write_instance, LAWRENCE_BKS};
use jssp_bio::*;

#[test]
fn la01_shape() {
    let inst = lawrence("LA01");
    assert_eq!(inst.name(), "LA01");
    assert_eq!((inst.num_jobs(), inst.num_machines()), (10, 5));
    assert_eq!(inst.job(0)[0].machine, 1);
    assert_eq!(inst.job(0)[0].duration, 21);
    assert_eq!(inst.job(9)[4].duration, 96);
    assert!(makespan_lower_bound(&inst) <= 666);
}

#[test]
fn every_fixture_matches_the_bks_table() {
    for e in LAWRENCE_BKS {
        let inst = lawrence(e.instance_name);
        assert_eq!((inst.num_jobs(), inst.num_machines()), e.size, "{}", e.instance_name);
        assert!(makespan_lower_bound(&inst) <= e.bks, "{}", e.instance_name);
        assert_eq!(bks_lookup(inst.name()).unwrap(), e.bks);
        let text = write_instance(&inst);
        assert_eq!(parse_instance(&text, inst.name()).unwrap(), inst);
    }
}

#[test]
fn fixture_paths_resolve() {
    assert!(fixture("la40").exists());
}
