#![no_main]

use floerseq::gf2::BitMatrix;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let rows: Vec<&str> = text.split('\n').collect();
        if let Ok(m) = BitMatrix::from_row_strings(&rows) {
            let back = BitMatrix::from_row_strings(&m.to_row_strings()).unwrap();
            assert_eq!(back, m);
            // rank is bounded by both dimensions
            assert!(m.rank() <= m.rows().min(m.cols()));
        }
    }
});
