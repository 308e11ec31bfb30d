#![no_main]
use libfuzzer_sys::fuzz_target;
use nonbasis::report::parse_group_spec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_group_spec(text) {
        // The parsed type must survive a round trip through its own spec string.
        let again = parse_group_spec(&g.spec_string()).expect("spec string reparses");
        assert_eq!(again, g);
    }
});
