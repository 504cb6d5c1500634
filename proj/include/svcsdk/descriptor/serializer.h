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

#ifndef SVCSDK_DESCRIPTOR_SERIALIZER_H_
#define SVCSDK_DESCRIPTOR_SERIALIZER_H_

#include <string>

#include "svcsdk/descriptor/model.h"

namespace svcsdk {

// Canonical YAML: keys in schema order, lists in model order, numbers in
// shortest round-trip form. Output is a pure function of the model.
std::string SerializeDescriptor(const ServiceDescriptor& nsd);
std::string SerializeDescriptor(const VnfDescriptor& vnfd);

}  // namespace svcsdk

#endif  // SVCSDK_DESCRIPTOR_SERIALIZER_H_
