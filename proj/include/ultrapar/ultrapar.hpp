#pragma once

#include "ultrapar/criteria.hpp"
#include "ultrapar/heisenberg.hpp"
#include "ultrapar/hermitian.hpp"
#include "ultrapar/oracle.hpp"
#include "ultrapar/scan.hpp"
#include "ultrapar/triangle.hpp"
#include "ultrapar/words.hpp"
