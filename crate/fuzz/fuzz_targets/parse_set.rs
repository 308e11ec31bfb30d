#![no_main]
use libfuzzer_sys::fuzz_target;
use nonbasis::report::{parse_group_spec, parse_set};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    // First line picks the group, the rest is the set.
    let (spec, set) = text.split_once('\n').unwrap_or(("2,6", text));
    let Ok(g) = parse_group_spec(spec) else { return };
    if g.order() > 4096 {
        return;
    }
    if let Ok(a) = parse_set(&g, set) {
        let listed: Vec<String> = a.iter().map(|x| x.to_string()).collect();
        assert_eq!(parse_set(&g, &listed.join(",")).unwrap(), a);
    }
});
