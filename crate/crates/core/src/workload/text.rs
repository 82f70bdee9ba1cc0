use super::rng::SeededRng;

/// Latin-like vocabulary; every word is 2 to 12 lowercase letters.
const WORDS: &[&str] = &[
    "lorem",
    "ipsum",
    "dolor",
    "sit",
    "amet",
    "consectetur",
    "adipiscing",
    "elit",
    "sed",
    "do",
    "eiusmod",
    "tempor",
    "incididunt",
    "ut",
    "labore",
    "et",
    "dolore",
    "magna",
    "aliqua",
    "enim",
    "ad",
    "minim",
    "veniam",
    "quis",
    "nostrud",
    "exercitation",
    "ullamco",
    "laboris",
    "nisi",
    "aliquip",
    "ex",
    "ea",
    "commodo",
    "consequat",
    "duis",
    "aute",
    "irure",
    "in",
    "voluptate",
    "velit",
    "esse",
    "cillum",
    "fugiat",
    "nulla",
    "pariatur",
    "excepteur",
    "sint",
    "occaecat",
    "cupidatat",
    "non",
    "proident",
    "sunt",
    "culpa",
    "qui",
    "officia",
    "deserunt",
    "mollit",
    "anim",
    "id",
    "est",
    "laborum",
    "vitae",
    "porta",
    "gravida",
    "lectus",
    "mauris",
    "pretium",
    "nibh",
    "felis",
    "tortor",
    "sapien",
    "pulvinar",
    "semper",
];

const LINE_WIDTH: usize = 80;
const MIN_SENTENCE: u64 = 4;
const MAX_SENTENCE: u64 = 12;

/// Generates exactly `bytes` bytes of Latin-like text.
///
/// Sentences of 4 to 12 words drawn uniformly from a fixed vocabulary; the
/// first word is capitalised and the last one ends with a period. Words are
/// separated by one space, or by a newline when the next word would pass
/// column 80. The output is cut at `bytes`.
pub fn gen_lorem(seed: u64, bytes: usize) -> Vec<u8> {
    let mut rng = SeededRng::new(seed);
    let mut out = Vec::with_capacity(bytes + 16);
    let mut column = 0;
    while out.len() < bytes {
        let words = MIN_SENTENCE + rng.below(MAX_SENTENCE - MIN_SENTENCE + 1);
        for w in 0..words {
            let word = WORDS[rng.below(WORDS.len() as u64) as usize].as_bytes();
            let last = w + 1 == words;
            let token_len = word.len() + usize::from(last);
            if column > 0 {
                if column + 1 + token_len > LINE_WIDTH {
                    out.push(b'\n');
                    column = 0;
                } else {
                    out.push(b' ');
                    column += 1;
                }
            }
            let start = out.len();
            out.extend_from_slice(word);
            if w == 0 {
                out[start] = out[start].to_ascii_uppercase();
            }
            if last {
                out.push(b'.');
            }
            column += token_len;
        }
    }
    out.truncate(bytes);
    out
}

const HEX: &[u8; 16] = b"0123456789abcdef";

/// Two lowercase hex digits per byte, single spaces between bytes on a
/// line, a newline after every 16th byte.
pub fn to_hexdump(text: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(text.len() * 3);
    for (i, &byte) in text.iter().enumerate() {
        if i % 16 != 0 {
            out.push(b' ');
        }
        out.push(HEX[usize::from(byte >> 4)]);
        out.push(HEX[usize::from(byte & 0xf)]);
        if i % 16 == 15 {
            out.push(b'\n');
        }
    }
    out
}

/// Repeats `unit` until the output is exactly `bytes` long.
pub fn repeat_to(unit: &[u8], bytes: usize) -> Vec<u8> {
    if unit.is_empty() {
        return Vec::new();
    }
    unit.iter().copied().cycle().take(bytes).collect()
}
