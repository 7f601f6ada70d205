#ifndef WALDSCHMIDT_WALDSCHMIDT_HPP
#define WALDSCHMIDT_WALDSCHMIDT_HPP

#include <waldschmidt/bounds.hpp>
#include <waldschmidt/linform.hpp>
#include <waldschmidt/plane_system.hpp>
#include <waldschmidt/rational.hpp>
#include <waldschmidt/report.hpp>
#include <waldschmidt/space_system.hpp>
#include <waldschmidt/trace_json.hpp>
#include <waldschmidt/verify.hpp>

#endif  // WALDSCHMIDT_WALDSCHMIDT_HPP
