#!/usr/bin/env python3
"""Write the optional transliteration tables in data/translit/.

Each table is JSON: {"script_name": ..., "entries": [[source, replacement], ...]}.
Replacements are plain ASCII letters; the library strips any remaining marks
and lowercases afterwards.

usage: gen_translit_tables.py OUTDIR
"""

import json
import sys
from pathlib import Path


def hangul():
    # Conjoining jamo (what canonical decomposition of a syllable yields),
    # Revised Romanization values, letter by letter.
    initials = ["g", "kk", "n", "d", "tt", "r", "m", "b", "pp", "s", "ss", "", "j", "jj", "ch", "k", "t", "p", "h"]
    vowels = ["a", "ae", "ya", "yae", "eo", "e", "yeo", "ye", "o", "wa", "wae", "oe", "yo", "u", "wo", "we", "wi",
              "yu", "eu", "ui", "i"]
    finals = ["k", "k", "k", "n", "n", "n", "t", "l", "k", "m", "l", "l", "l", "p", "l", "m", "p", "p", "t", "t",
              "ng", "t", "t", "k", "t", "p", "t"]
    entries = [[chr(0x1100 + i), v] for i, v in enumerate(initials)]
    entries += [[chr(0x1161 + i), v] for i, v in enumerate(vowels)]
    entries += [[chr(0x11A8 + i), v] for i, v in enumerate(finals)]
    # Compatibility jamo written on their own.
    compat_consonants = {
        "ㄱ": "g", "ㄲ": "kk", "ㄴ": "n", "ㄷ": "d", "ㄸ": "tt", "ㄹ": "r", "ㅁ": "m", "ㅂ": "b", "ㅃ": "pp",
        "ㅅ": "s", "ㅆ": "ss", "ㅇ": "", "ㅈ": "j", "ㅉ": "jj", "ㅊ": "ch", "ㅋ": "k", "ㅌ": "t", "ㅍ": "p", "ㅎ": "h",
    }
    entries += [[k, v] for k, v in compat_consonants.items()]
    entries += [[chr(0x314F + i), v] for i, v in enumerate(vowels)]
    return "Hangul", entries


def arabic():
    letters = {
        "ا": "a", "ب": "b", "ت": "t", "ث": "th", "ج": "j", "ح": "h", "خ": "kh", "د": "d", "ذ": "dh", "ر": "r",
        "ز": "z", "س": "s", "ش": "sh", "ص": "s", "ض": "d", "ط": "t", "ظ": "z", "ع": "", "غ": "gh", "ف": "f",
        "ق": "q", "ك": "k", "ل": "l", "م": "m", "ن": "n", "ه": "h", "و": "w", "ي": "y", "ى": "a", "ة": "h",
        "ء": "", "ٱ": "a",
        # Persian and Urdu letters
        "پ": "p", "چ": "ch", "ژ": "zh", "ک": "k", "گ": "g", "ی": "y", "ٹ": "t", "ڈ": "d", "ڑ": "r", "ں": "n",
        "ہ": "h", "ھ": "h", "ے": "e",
        # harakat
        "َ": "a", "ُ": "u", "ِ": "i", "ْ": "", "ّ": "",
    }
    return "Arabic", [[k, v] for k, v in letters.items()]


def hebrew():
    letters = {
        "א": "", "ב": "b", "ג": "g", "ד": "d", "ה": "h", "ו": "v", "ז": "z", "ח": "ch", "ט": "t", "י": "y",
        "כ": "k", "ך": "k", "ל": "l", "מ": "m", "ם": "m", "נ": "n", "ן": "n", "ס": "s", "ע": "", "פ": "p",
        "ף": "f", "צ": "ts", "ץ": "ts", "ק": "k", "ר": "r", "ש": "sh", "ת": "t",
    }
    return "Hebrew", [[k, v] for k, v in letters.items()]


def abugida(consonants, independent_vowels, vowel_signs, virama, extra):
    """Consonant + sign, consonant + virama and bare consonant (inherent a)."""
    entries = []
    for c, cv in consonants.items():
        for s, sv in vowel_signs.items():
            entries.append([c + s, cv + sv])
        entries.append([c + virama, cv])
        entries.append([c, cv + "a"])
    entries += [[k, v] for k, v in independent_vowels.items()]
    entries += [[k, v] for k, v in vowel_signs.items()]
    entries += [[k, v] for k, v in extra.items()]
    return entries


def devanagari():
    consonants = {
        "क": "k", "ख": "kh", "ग": "g", "घ": "gh", "ङ": "ng", "च": "c", "छ": "ch", "ज": "j", "झ": "jh", "ञ": "ny",
        "ट": "t", "ठ": "th", "ड": "d", "ढ": "dh", "ण": "n", "त": "t", "थ": "th", "द": "d", "ध": "dh", "न": "n",
        "प": "p", "फ": "ph", "ब": "b", "भ": "bh", "म": "m", "य": "y", "र": "r", "ल": "l", "व": "v", "श": "sh",
        "ष": "sh", "स": "s", "ह": "h",
    }
    vowels = {"अ": "a", "आ": "aa", "इ": "i", "ई": "ii", "उ": "u", "ऊ": "uu", "ऋ": "ri", "ए": "e", "ऐ": "ai",
              "ओ": "o", "औ": "au"}
    signs = {"ा": "aa", "ि": "i", "ी": "ii", "ु": "u", "ू": "uu", "ृ": "ri", "े": "e", "ै": "ai", "ो": "o",
             "ौ": "au"}
    extra = {"ं": "n", "ँ": "n", "ः": "h", "्": "", "़": "", "।": "", "॥": ""}
    return "Devanagari", abugida(consonants, vowels, signs, "्", extra)


def tamil():
    consonants = {
        "க": "k", "ங": "ng", "ச": "c", "ஞ": "ny", "ட": "t", "ண": "n", "த": "t", "ந": "n", "ப": "p", "ம": "m",
        "ய": "y", "ர": "r", "ல": "l", "வ": "v", "ழ": "zh", "ள": "l", "ற": "r", "ன": "n", "ஜ": "j", "ஷ": "sh",
        "ஸ": "s", "ஹ": "h",
    }
    vowels = {"அ": "a", "ஆ": "aa", "இ": "i", "ஈ": "ii", "உ": "u", "ஊ": "uu", "எ": "e", "ஏ": "ee", "ஐ": "ai",
              "ஒ": "o", "ஓ": "oo", "ஔ": "au"}
    signs = {"ா": "aa", "ி": "i", "ீ": "ii", "ு": "u", "ூ": "uu", "ெ": "e", "ே": "ee", "ை": "ai", "ொ": "o",
             "ோ": "oo", "ௌ": "au"}
    extra = {"ஃ": "h"}
    return "Tamil", abugida(consonants, vowels, signs, "்", extra)


def kana():
    rows = {
        "あ": "a", "い": "i", "う": "u", "え": "e", "お": "o",
        "か": "ka", "き": "ki", "く": "ku", "け": "ke", "こ": "ko",
        "さ": "sa", "し": "shi", "す": "su", "せ": "se", "そ": "so",
        "た": "ta", "ち": "chi", "つ": "tsu", "て": "te", "と": "to",
        "な": "na", "に": "ni", "ぬ": "nu", "ね": "ne", "の": "no",
        "は": "ha", "ひ": "hi", "ふ": "fu", "へ": "he", "ほ": "ho",
        "ま": "ma", "み": "mi", "む": "mu", "め": "me", "も": "mo",
        "や": "ya", "ゆ": "yu", "よ": "yo",
        "ら": "ra", "り": "ri", "る": "ru", "れ": "re", "ろ": "ro",
        "わ": "wa", "を": "o", "ん": "n",
        "が": "ga", "ぎ": "gi", "ぐ": "gu", "げ": "ge", "ご": "go",
        "ざ": "za", "じ": "ji", "ず": "zu", "ぜ": "ze", "ぞ": "zo",
        "だ": "da", "ぢ": "ji", "づ": "zu", "で": "de", "ど": "do",
        "ば": "ba", "び": "bi", "ぶ": "bu", "べ": "be", "ぼ": "bo",
        "ぱ": "pa", "ぴ": "pi", "ぷ": "pu", "ぺ": "pe", "ぽ": "po",
        "ぁ": "a", "ぃ": "i", "ぅ": "u", "ぇ": "e", "ぉ": "o", "っ": "", "ゃ": "ya", "ゅ": "yu", "ょ": "yo",
    }
    youon = {}
    for base, stem in {"き": "ky", "し": "sh", "ち": "ch", "に": "ny", "ひ": "hy", "み": "my", "り": "ry",
                       "ぎ": "gy", "じ": "j", "び": "by", "ぴ": "py"}.items():
        for small, vowel in {"ゃ": "a", "ゅ": "u", "ょ": "o"}.items():
            youon[base + small] = stem + vowel
    hiragana = {**rows, **youon}
    # Katakana sits 0x60 above hiragana.
    katakana = {"".join(chr(ord(c) + 0x60) for c in k): v for k, v in hiragana.items()}
    katakana["ー"] = ""
    entries = [[k, v] for k, v in {**hiragana, **katakana}.items()]
    return "Kana", entries


def main():
    if len(sys.argv) != 2:
        sys.exit(__doc__)
    out = Path(sys.argv[1])
    out.mkdir(parents=True, exist_ok=True)
    for build in (hangul, arabic, hebrew, devanagari, tamil, kana):
        name, entries = build()
        for source, replacement in entries:
            assert replacement.isascii() and (replacement == "" or replacement.isalpha()), (name, source)
        path = out / f"{name.lower()}.json"
        path.write_text(json.dumps({"script_name": name, "entries": entries}, ensure_ascii=False, indent=1) + "\n",
                        encoding="utf-8")
        print(f"{path}: {len(entries)} entries")


if __name__ == "__main__":
    main()
