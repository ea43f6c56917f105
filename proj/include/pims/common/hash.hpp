// Copyright 2026 The PIMS Authorization Authors
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

#pragma once

#include <initializer_list>
#include <string_view>

#include "pims/common/bytes.hpp"

namespace pims {

using Hash256 = FixedBytes<32>;
using Hash512 = FixedBytes<64>;

Hash256 sha256(ByteView data);
Hash512 sha512(ByteView data);

// Domain-separated hashes: the label and each part are length-prefixed
// before hashing so distinct part lists never collide.
Hash256 tagged_sha256(std::string_view label, std::initializer_list<ByteView> parts);
Hash512 tagged_sha512(std::string_view label, std::initializer_list<ByteView> parts);

}  // namespace pims
