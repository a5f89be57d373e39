// Copyright 2026 The CTVP Project Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ctvp/program.hpp"

#include <openssl/evp.h>

#include <array>
#include <stdexcept>

namespace ctvp {

std::string sha256_hex(const std::string& bytes) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 digest failed");
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xF];
    }
    return out;
}

ParseResult parse_program(const std::string& source) {
    ParseResult result;
    BlockParseResult block = parse_block_source(source);
    if (!block.ok()) {
        result.error = block.error;
        return result;
    }
    Program p;
    p.source = source;
    p.ast = std::move(*block.block);
    p.hash = sha256_hex(render_block(p.ast, RenderStyle::Canonical));
    result.program = std::move(p);
    return result;
}

Program program_from_ast(AstBlock ast, RenderStyle style) {
    Program p;
    p.source = render_block(ast, style);
    p.ast = std::move(ast);
    p.hash = sha256_hex(render_block(p.ast, RenderStyle::Canonical));
    return p;
}

}  // namespace ctvp
