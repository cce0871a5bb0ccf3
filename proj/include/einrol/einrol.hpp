#ifndef EINROL_EINROL_HPP
#define EINROL_EINROL_HPP

#include "einrol/dense_tensor.hpp"
#include "einrol/error.hpp"
#include "einrol/io.hpp"
#include "einrol/mode_shape.hpp"
#include "einrol/mp_inverse.hpp"
#include "einrol/numeric_policy.hpp"
#include "einrol/random.hpp"
#include "einrol/rol.hpp"
#include "einrol/tensor_ops.hpp"
#include "einrol/unfolding.hpp"

#endif // EINROL_EINROL_HPP
