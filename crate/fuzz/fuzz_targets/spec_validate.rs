#![no_main]

use circloop::specfile::SpecFile;
use circloop::{build_loop_spec, CircleLoop};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(file) = SpecFile::parse(data) else { return };
    if file.r.cos.len() > 16 || file.g.cos.len() > 16 {
        return;
    }
    let (Ok(r), Ok(g)) = (file.weight(), file.shear()) else { return };
    let tol = file.tolerances().with_grid(file.tolerances().grid_n.min(1024));
    let Ok(spec) = build_loop_spec(&r, &g, &tol) else { return };
    if let Ok(lp) = CircleLoop::new(&spec) {
        let p = lp.mul(1.0, 2.0);
        let _ = lp.ldiv(1.0, p.radians());
        let _ = lp.rdiv(p.radians(), 2.0);
    }
});
