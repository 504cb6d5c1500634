// Copyright 2026 The svcsdk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SVCSDK_DESCRIPTOR_PARSER_H_
#define SVCSDK_DESCRIPTOR_PARSER_H_

#include <string_view>
#include <vector>

#include "svcsdk/common/error.h"
#include "svcsdk/descriptor/model.h"

namespace svcsdk {

// Parses a network service descriptor. Throws Error(kParse) for malformed
// YAML (location "line L, column C") and Error(kSchema) listing every
// violation by field path ("/vnfs", "/virtual_links[0].endpoints").
ServiceDescriptor ParseServiceDescriptor(std::string_view text);
VnfDescriptor ParseVnfDescriptor(std::string_view text);

// Same checks as the parsers, reported instead of thrown. A YAML syntax error
// is returned as a single violation at "/". Empty result means the document
// parses.
std::vector<ErrorDetail> CheckServiceDescriptorSchema(std::string_view text);
std::vector<ErrorDetail> CheckVnfDescriptorSchema(std::string_view text);

}  // namespace svcsdk

#endif  // SVCSDK_DESCRIPTOR_PARSER_H_
