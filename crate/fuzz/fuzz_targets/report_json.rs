#![no_main]
use libfuzzer_sys::fuzz_target;
use nonbasis::report::SurveyReport;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(report) = SurveyReport::from_json(text) {
        // Keep re-certification cheap: large orders or h make each input slow.
        let small = report.rows.iter().all(|r| {
            r.h <= 16 && r.group.iter().map(|&f| f as u64).product::<u64>() <= 64
        });
        if small {
            let _ = report.verify_witnesses();
        }
        let back = SurveyReport::from_json(&report.to_json()).expect("serialized report reparses");
        assert_eq!(back, report);
        let _ = report.to_csv();
        let _ = report.to_text();
    }
});
