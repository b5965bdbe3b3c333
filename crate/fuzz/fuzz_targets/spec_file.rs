#![no_main]

use circloop::specfile::SpecFile;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(spec) = SpecFile::parse(data) {
        let again = SpecFile::parse(spec.to_json().as_bytes()).expect("serialized spec parses");
        assert_eq!(again, spec);
        let _ = spec.weight();
        let _ = spec.shear();
        let _ = spec.tolerances();
    }
});
