#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gwt/descriptors.hpp"
#include "gwt/errors.hpp"
#include "gwt/nonclassicality.hpp"
#include "gwt/protocol.hpp"

namespace gwt::io {

using nlohmann::json;

/// Schema violation; `pointer()` is the JSON pointer of the offending field.
class SchemaError : public ValidationError {
 public:
  SchemaError(std::string pointer, const std::string& message)
      : ValidationError(pointer + ": " + message), pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

json complex_to_json(cplx z);
json matrix_to_json(const DenseOperator& m);
json state_to_json(const DensityState& s);
json pauli_to_json(const PauliOp& op);
json descriptors_to_json(const std::vector<DescriptorSet>& sets);
json step_to_json(const StepSpec& step);
json spec_to_json(const ProtocolSpec& spec);
json variable_to_json(const VariableSpec& v);

cplx complex_from_json(const json& j, const std::string& ptr);
ProtocolSpec spec_from_json(const json& j, const std::string& ptr = "");
VariableSpec variable_from_json(const json& j, const std::string& ptr = "");
std::vector<VariableSpec> variables_from_json(const json& j, const std::string& ptr = "");

json entanglement_to_json(const EntanglementVerdict& v);
/// Deterministic result section for a protocol evaluation.
json evaluation_to_json(const Evaluation& e);

}  // namespace gwt::io
