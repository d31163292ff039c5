#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace homext {

using BigInt = boost::multiprecision::cpp_int;

}  // namespace homext
