#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(c) = floerseq::schema::parse_complex(text) {
            // anything that parses must survive a round trip
            let again = floerseq::schema::parse_complex(&floerseq::schema::emit_complex(&c))
                .expect("emitted complex must reparse");
            assert_eq!(again, c);
        }
    }
});
