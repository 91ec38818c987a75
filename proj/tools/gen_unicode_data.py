#!/usr/bin/env python3
# Copyright 2026 The colloq Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates include/colloq/detail/unicode_data.hpp from Python's unicodedata.

Word characters are code points in general categories L* (letters) or
N* (numbers). Case maps keep only simple 1:1 mappings; multi-code-point
results (e.g. U+0130) are dropped so the tables stay invertible.
"""

import sys
import unicodedata

MAX_CP = 0x110000


def word_ranges():
    ranges = []
    start = None
    for cp in range(MAX_CP):
        cat = unicodedata.category(chr(cp))
        is_word = cat[0] in ("L", "N")
        if is_word and start is None:
            start = cp
        elif not is_word and start is not None:
            ranges.append((start, cp - 1))
            start = None
    if start is not None:
        ranges.append((start, MAX_CP - 1))
    return ranges


def space_ranges():
    ranges = []
    start = None
    for cp in range(MAX_CP):
        try:
            is_space = chr(cp).isspace()
        except ValueError:
            is_space = False
        if is_space and start is None:
            start = cp
        elif not is_space and start is not None:
            ranges.append((start, cp - 1))
            start = None
    return ranges


def case_map(convert):
    out = []
    for cp in range(MAX_CP):
        mapped = convert(chr(cp))
        if len(mapped) == 1 and mapped != chr(cp):
            out.append((cp, ord(mapped[0])))
    return out


def emit_ranges(f, name, ranges):
    f.write(f"inline constexpr CodepointRange {name}[] = {{\n")
    for i in range(0, len(ranges), 4):
        row = ", ".join(f"{{0x{lo:X}, 0x{hi:X}}}" for lo, hi in ranges[i : i + 4])
        f.write(f"    {row},\n")
    f.write("};\n\n")


def emit_map(f, name, pairs):
    f.write(f"inline constexpr CaseMapping {name}[] = {{\n")
    for i in range(0, len(pairs), 4):
        row = ", ".join(f"{{0x{a:X}, 0x{b:X}}}" for a, b in pairs[i : i + 4])
        f.write(f"    {row},\n")
    f.write("};\n\n")


def main():
    path = sys.argv[1] if len(sys.argv) > 1 else "include/colloq/detail/unicode_data.hpp"
    with open(path, "w", encoding="utf-8") as f:
        f.write(
            "// Copyright 2026 The colloq Authors.\n"
            "//\n"
            '// Licensed under the Apache License, Version 2.0 (the "License");\n'
            "// you may not use this file except in compliance with the License.\n"
            "// You may obtain a copy of the License at\n"
            "//\n"
            "//     http://www.apache.org/licenses/LICENSE-2.0\n"
            "//\n"
            "// Unless required by applicable law or agreed to in writing, software\n"
            '// distributed under the License is distributed on an "AS IS" BASIS,\n'
            "// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.\n"
            "// See the License for the specific language governing permissions and\n"
            "// limitations under the License.\n"
            "//\n"
            f"// Generated by tools/gen_unicode_data.py (Unicode {unicodedata.unidata_version}).\n"
            "// Do not edit by hand.\n\n"
            "#pragma once\n\n"
            "#include <cstdint>\n\n"
            "namespace colloq::detail {\n\n"
            "struct CodepointRange {\n"
            "    std::uint32_t lo;\n"
            "    std::uint32_t hi;\n"
            "};\n\n"
            "struct CaseMapping {\n"
            "    std::uint32_t from;\n"
            "    std::uint32_t to;\n"
            "};\n\n"
        )
        emit_ranges(f, "kWordRanges", word_ranges())
        emit_ranges(f, "kSpaceRanges", space_ranges())
        emit_map(f, "kToLower", case_map(str.lower))
        emit_map(f, "kToUpper", case_map(str.upper))
        f.write("}  // namespace colloq::detail\n")


if __name__ == "__main__":
    main()
